"""Durable storage: users, sessions, annotation records, export/import.

Backed by a single embedded SQLite database so the platform stays
self-hostable with no external services.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import secrets
import sqlite3
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .entities import TAG_ALPHABET
from .punctuation import PunctLabelRegistry, default_registry

TASKS = ("punctuate", "ner", "translate")

DEFAULT_SESSION_TTL = timedelta(days=30)

_SCRYPT_N, _SCRYPT_R, _SCRYPT_P = 2**14, 8, 1

EXPORT_FIELDS = (
    "id",
    "user_id",
    "task",
    "input_text",
    "model_output",
    "edited_output",
    "params",
    "created_at",
    "updated_at",
)


class PersistenceError(Exception):
    pass


class StorageFailure(PersistenceError):
    pass


class NotFound(PersistenceError):
    pass


class Forbidden(PersistenceError):
    pass


class ShapeMismatch(PersistenceError):
    pass


class EmailTaken(PersistenceError):
    pass


class AuthFailed(PersistenceError):
    pass


@dataclass(frozen=True)
class User:
    id: str
    email: str
    display_name: str
    created_at: str


@dataclass(frozen=True)
class Session:
    token: str
    user_id: str
    expires_at: str


@dataclass(frozen=True)
class AnnotationRecord:
    id: str
    user_id: str
    task: str
    input_text: str
    model_output: object
    edited_output: object
    params: dict
    created_at: str
    updated_at: str

    def as_dict(self) -> dict:
        return {field: getattr(self, field) for field in EXPORT_FIELDS}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def hash_password(password: str) -> str:
    salt = secrets.token_bytes(16)
    digest = hashlib.scrypt(
        password.encode(), salt=salt, n=_SCRYPT_N, r=_SCRYPT_R, p=_SCRYPT_P
    )
    return f"scrypt${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, salt_hex, digest_hex = stored.split("$")
        if scheme != "scrypt":
            return False
        digest = hashlib.scrypt(
            password.encode(),
            salt=bytes.fromhex(salt_hex),
            n=_SCRYPT_N,
            r=_SCRYPT_R,
            p=_SCRYPT_P,
        )
        return secrets.compare_digest(digest.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


def validate_payload_shape(
    task: str, payload: object, registry: PunctLabelRegistry | None = None
) -> None:
    """Check that a model/edited output payload matches its task."""
    if task == "punctuate":
        registry = registry or default_registry()
        if not isinstance(payload, list) or not all(
            isinstance(x, str) and x in registry for x in payload
        ):
            raise ShapeMismatch("punctuate payload must be a list of registered label ids")
    elif task == "ner":
        if not isinstance(payload, list) or not all(
            isinstance(x, str) and x in TAG_ALPHABET for x in payload
        ):
            raise ShapeMismatch("ner payload must be a list of IOB2 tags")
    elif task == "translate":
        if not isinstance(payload, str):
            raise ShapeMismatch("translate payload must be a string")
    else:
        raise ShapeMismatch(f"unknown task {task!r}")


_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    id TEXT PRIMARY KEY,
    email TEXT UNIQUE NOT NULL,
    password_hash TEXT NOT NULL,
    display_name TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
    token TEXT PRIMARY KEY,
    user_id TEXT NOT NULL REFERENCES users(id),
    expires_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS records (
    id TEXT PRIMARY KEY,
    user_id TEXT NOT NULL REFERENCES users(id),
    task TEXT NOT NULL,
    input_text TEXT NOT NULL,
    model_output TEXT NOT NULL,
    edited_output TEXT NOT NULL,
    params TEXT NOT NULL,
    created_at TEXT NOT NULL,
    updated_at TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS records_by_user ON records(user_id, created_at, id);
"""


class Store:
    """Transactional store over SQLite; writes serialized by a process lock."""

    def __init__(
        self,
        path: str = ":memory:",
        session_ttl: timedelta = DEFAULT_SESSION_TTL,
        registry: PunctLabelRegistry | None = None,
    ):
        self._lock = threading.RLock()
        self._session_ttl = session_ttl
        self._registry = registry or default_registry()
        try:
            self._db = sqlite3.connect(path, check_same_thread=False)
            self._db.execute("PRAGMA foreign_keys = ON")
            with self._lock, self._db:
                self._db.executescript(_SCHEMA)
        except sqlite3.Error as exc:
            raise StorageFailure(str(exc)) from exc

    def close(self) -> None:
        self._db.close()

    # -- users & sessions -------------------------------------------------

    def register_user(self, email: str, password: str, display_name: str = "") -> User:
        user = User(uuid.uuid4().hex, email, display_name or email, _now())
        try:
            with self._lock, self._db:
                self._db.execute(
                    "INSERT INTO users VALUES (?, ?, ?, ?, ?)",
                    (user.id, user.email, hash_password(password), user.display_name, user.created_at),
                )
        except sqlite3.IntegrityError:
            raise EmailTaken(f"email {email!r} is already registered") from None
        except sqlite3.Error as exc:
            raise StorageFailure(str(exc)) from exc
        return user

    def login(self, email: str, password: str) -> Session:
        row = self._db.execute(
            "SELECT id, password_hash FROM users WHERE email = ?", (email,)
        ).fetchone()
        if row is None or not verify_password(password, row[1]):
            raise AuthFailed("unknown email or wrong password")
        session = Session(
            token=secrets.token_urlsafe(32),  # 256 bits of entropy
            user_id=row[0],
            expires_at=(datetime.now(timezone.utc) + self._session_ttl).isoformat(),
        )
        with self._lock, self._db:
            self._db.execute(
                "INSERT INTO sessions VALUES (?, ?, ?)",
                (session.token, session.user_id, session.expires_at),
            )
        return session

    def resolve_session(self, token: str) -> User | None:
        """Return the session's user, renewing the expiry on use."""
        row = self._db.execute(
            "SELECT s.user_id, s.expires_at, u.email, u.display_name, u.created_at"
            " FROM sessions s JOIN users u ON u.id = s.user_id WHERE s.token = ?",
            (token,),
        ).fetchone()
        if row is None:
            return None
        now = datetime.now(timezone.utc)
        if datetime.fromisoformat(row[1]) < now:
            with self._lock, self._db:
                self._db.execute("DELETE FROM sessions WHERE token = ?", (token,))
            return None
        with self._lock, self._db:
            self._db.execute(
                "UPDATE sessions SET expires_at = ? WHERE token = ?",
                ((now + self._session_ttl).isoformat(), token),
            )
        return User(row[0], row[2], row[3], row[4])

    # -- annotation records ----------------------------------------------

    def create_record(
        self,
        user_id: str,
        task: str,
        input_text: str,
        model_output: object,
        params: dict | None = None,
    ) -> AnnotationRecord:
        validate_payload_shape(task, model_output, self._registry)
        now = _now()
        record = AnnotationRecord(
            id=uuid.uuid4().hex,
            user_id=user_id,
            task=task,
            input_text=input_text,
            model_output=model_output,
            edited_output=model_output,
            params=params or {},
            created_at=now,
            updated_at=now,
        )
        try:
            with self._lock, self._db:
                self._db.execute(
                    "INSERT INTO records VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
                    (
                        record.id,
                        record.user_id,
                        record.task,
                        record.input_text,
                        json.dumps(record.model_output, ensure_ascii=False),
                        json.dumps(record.edited_output, ensure_ascii=False),
                        json.dumps(record.params, ensure_ascii=False),
                        record.created_at,
                        record.updated_at,
                    ),
                )
        except sqlite3.Error as exc:
            raise StorageFailure(str(exc)) from exc
        return record

    def _row_to_record(self, row) -> AnnotationRecord:
        return AnnotationRecord(
            id=row[0],
            user_id=row[1],
            task=row[2],
            input_text=row[3],
            model_output=json.loads(row[4]),
            edited_output=json.loads(row[5]),
            params=json.loads(row[6]),
            created_at=row[7],
            updated_at=row[8],
        )

    def get_record(self, record_id: str, user_id: str) -> AnnotationRecord:
        row = self._db.execute(
            "SELECT * FROM records WHERE id = ?", (record_id,)
        ).fetchone()
        if row is None:
            raise NotFound(f"no record {record_id!r}")
        record = self._row_to_record(row)
        if record.user_id != user_id:
            raise Forbidden("record belongs to another user")
        return record

    def update_edit(
        self, record_id: str, user_id: str, edited_output: object
    ) -> AnnotationRecord:
        record = self.get_record(record_id, user_id)
        validate_payload_shape(record.task, edited_output, self._registry)
        updated_at = _now()
        if updated_at <= record.updated_at:
            updated_at = record.updated_at  # clock resolution; never go backwards
        with self._lock, self._db:
            self._db.execute(
                "UPDATE records SET edited_output = ?, updated_at = ? WHERE id = ?",
                (json.dumps(edited_output, ensure_ascii=False), updated_at, record_id),
            )
        return self.get_record(record_id, user_id)

    def list_records(self, user_id: str) -> list[AnnotationRecord]:
        rows = self._db.execute(
            "SELECT * FROM records WHERE user_id = ? ORDER BY created_at, id",
            (user_id,),
        ).fetchall()
        return [self._row_to_record(r) for r in rows]

    def export_records(self, user_id: str, format: str = "json", bom: bool = False) -> bytes:
        records = self.list_records(user_id)
        if format == "json":
            return export_json(records)
        if format == "csv":
            return export_csv(records, bom=bom)
        raise ValueError(f"unknown export format {format!r}")


def export_json(records: list[AnnotationRecord]) -> bytes:
    data = [r.as_dict() for r in records]
    return json.dumps(data, ensure_ascii=False, indent=2).encode()


def import_json(data: bytes) -> list[AnnotationRecord]:
    """Inverse of :func:`export_json`; field-for-field lossless."""
    return [AnnotationRecord(**item) for item in json.loads(data.decode())]


def export_csv(records: list[AnnotationRecord], bom: bool = False) -> bytes:
    """RFC 4180 CSV; structured payloads serialized as JSON inside cells."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(EXPORT_FIELDS)
    for record in records:
        row = record.as_dict()
        for key in ("model_output", "edited_output", "params"):
            row[key] = json.dumps(row[key], ensure_ascii=False)
        writer.writerow([row[f] for f in EXPORT_FIELDS])
    payload = buffer.getvalue().encode("utf-8")
    return (b"\xef\xbb\xbf" + payload) if bom else payload
