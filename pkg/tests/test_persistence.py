from datetime import timedelta

import pytest

from hanjakit.persistence import (
    AuthFailed,
    EmailTaken,
    Forbidden,
    NotFound,
    ShapeMismatch,
    Store,
    export_csv,
    export_json,
    hash_password,
    import_json,
    verify_password,
)


@pytest.fixture()
def store():
    s = Store(":memory:")
    yield s
    s.close()


@pytest.fixture()
def user(store):
    return store.register_user("a@example.org", "secret", "Annotator A")


class TestPasswords:
    def test_verify_round_trip(self):
        stored = hash_password("hunter2")
        assert verify_password("hunter2", stored)
        assert not verify_password("hunter3", stored)

    def test_salted(self):
        assert hash_password("same") != hash_password("same")

    def test_garbage_hash_rejected(self):
        assert not verify_password("x", "not-a-hash")


class TestAuth:
    def test_register_and_login(self, store, user):
        session = store.login("a@example.org", "secret")
        resolved = store.resolve_session(session.token)
        assert resolved is not None and resolved.id == user.id

    def test_wrong_password(self, store, user):
        with pytest.raises(AuthFailed):
            store.login("a@example.org", "wrong")

    def test_duplicate_email(self, store, user):
        with pytest.raises(EmailTaken):
            store.register_user("a@example.org", "other")

    def test_unknown_token(self, store):
        assert store.resolve_session("nope") is None

    def test_expired_session(self, user):
        expiring = Store(":memory:", session_ttl=timedelta(seconds=-1))
        expiring.register_user("b@example.org", "pw")
        session = expiring.login("b@example.org", "pw")
        assert expiring.resolve_session(session.token) is None
        expiring.close()

    def test_token_entropy(self, store, user):
        tokens = {store.login("a@example.org", "secret").token for _ in range(5)}
        assert len(tokens) == 5
        assert all(len(t) >= 32 for t in tokens)


class TestRecords:
    def test_create_initializes_edit(self, store, user):
        record = store.create_record(
            user.id, "punctuate", "子曰", ["None", "ColonOpenQuote"],
            {"mode": "Comprehensive"},
        )
        assert record.edited_output == record.model_output
        assert record.updated_at >= record.created_at

    def test_shape_mismatch(self, store, user):
        with pytest.raises(ShapeMismatch):
            store.create_record(user.id, "punctuate", "子", ["B-PER"])
        with pytest.raises(ShapeMismatch):
            store.create_record(user.id, "ner", "子", "not tags")
        with pytest.raises(ShapeMismatch):
            store.create_record(user.id, "translate", "子", ["list"])
        with pytest.raises(ShapeMismatch):
            store.create_record(user.id, "mystery", "子", "x")

    def test_rapid_creates_distinct_and_ordered(self, store, user):
        first = store.create_record(user.id, "translate", "子", "자")
        second = store.create_record(user.id, "translate", "曰", "왈")
        assert first.id != second.id
        assert second.created_at >= first.created_at

    def test_update_edit(self, store, user):
        record = store.create_record(user.id, "translate", "子曰", "자 왈")
        updated = store.update_edit(record.id, user.id, "공자께서 말씀하셨다")
        assert updated.edited_output == "공자께서 말씀하셨다"
        assert updated.model_output == "자 왈"
        assert updated.updated_at >= record.updated_at

    def test_model_output_immutable_across_edits(self, store, user):
        record = store.create_record(user.id, "translate", "子", "자")
        for i in range(100):
            store.update_edit(record.id, user.id, f"edit {i}")
        assert store.get_record(record.id, user.id).model_output == "자"

    def test_other_user_forbidden(self, store, user):
        other = store.register_user("b@example.org", "pw")
        record = store.create_record(user.id, "translate", "子", "자")
        with pytest.raises(Forbidden):
            store.update_edit(record.id, other.id, "x")
        with pytest.raises(Forbidden):
            store.get_record(record.id, other.id)

    def test_missing_record(self, store, user):
        with pytest.raises(NotFound):
            store.update_edit("missing", user.id, "x")

    def test_listing_isolated_per_user(self, store, user):
        other = store.register_user("b@example.org", "pw")
        store.create_record(user.id, "translate", "子", "자")
        store.create_record(other.id, "translate", "曰", "왈")
        mine = store.list_records(user.id)
        assert [r.user_id for r in mine] == [user.id]

    def test_listing_sorted(self, store, user):
        for text in "甲乙丙":
            store.create_record(user.id, "translate", text, text)
        records = store.list_records(user.id)
        keys = [(r.created_at, r.id) for r in records]
        assert keys == sorted(keys)


class TestExport:
    def test_empty_json(self, store, user):
        assert store.export_records(user.id, "json") == b"[]"

    def test_empty_csv_header_only(self, store, user):
        payload = store.export_records(user.id, "csv")
        assert payload.decode().strip() == (
            "id,user_id,task,input_text,model_output,edited_output,params,"
            "created_at,updated_at"
        )

    def test_json_round_trip(self, store, user):
        store.create_record(user.id, "punctuate", "子曰", ["None", "Comma"],
                            {"mode": "Simple"})
        store.create_record(user.id, "translate", "子", "자")
        records = store.list_records(user.id)
        assert import_json(export_json(records)) == records

    def test_csv_payloads_are_json_cells(self, store, user):
        store.create_record(user.id, "ner", "李舜臣", ["B-PER", "I-PER", "I-PER"])
        text = store.export_records(user.id, "csv").decode()
        assert '"[""B-PER"", ""I-PER"", ""I-PER""]"' in text

    def test_csv_bom_option(self, store, user):
        assert store.export_records(user.id, "csv", bom=True).startswith(b"\xef\xbb\xbf")


def test_records_survive_restart(tmp_path):
    db = tmp_path / "store.db"
    store = Store(str(db))
    user = store.register_user("a@example.org", "pw")
    record = store.create_record(user.id, "translate", "子", "자")
    store.close()

    reopened = Store(str(db))
    assert reopened.get_record(record.id, user.id) == record
    reopened.close()
