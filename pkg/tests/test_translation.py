import pytest
from hypothesis import given, strategies as st

from hanjakit.translation import (
    DeltaAfterDone,
    EmptyText,
    JobState,
    LanguageTag,
    StreamDelta,
    StreamTruncated,
    TranslationJob,
    UnsupportedDirection,
    assemble_stream,
    build_prompt,
    chunk,
)


class TestBuildPrompt:
    def test_english_template_bytes(self):
        prompt = build_prompt(LanguageTag.HANJA, LanguageTag.ENGLISH, "子曰")
        assert prompt == "Translate the following text from Hanja into English.\nHanja: 子曰\nEnglish:"

    def test_korean_template_bytes(self):
        prompt = build_prompt(LanguageTag.HANJA, LanguageTag.KOREAN, "子曰")
        assert prompt == "Translate the following text from Hanja into Korean.\nHanja: 子曰\nKorean:"

    def test_unsupported_direction(self):
        with pytest.raises(UnsupportedDirection):
            build_prompt(LanguageTag.KOREAN, LanguageTag.ENGLISH, "x")
        with pytest.raises(UnsupportedDirection):
            build_prompt(LanguageTag.HANJA, LanguageTag.HANJA, "x")

    def test_empty_text(self):
        with pytest.raises(EmptyText):
            build_prompt(LanguageTag.HANJA, LanguageTag.KOREAN, "")


class TestChunk:
    def test_fits_in_one_window(self):
        assert chunk("abcd", 10) == ["abcd"]

    def test_hard_split(self):
        assert chunk("abcd", 2) == ["ab", "cd"]

    def test_prefers_period_boundary(self):
        text = "甲" * 20
        labels = ["None"] * 20
        labels[8] = "Period"
        assert chunk(text, 12, labels) == [text[:9], text[9:]]

    def test_bad_max_units(self):
        with pytest.raises(ValueError):
            chunk("abc", 0)

    def test_label_length_checked(self):
        with pytest.raises(ValueError):
            chunk("abc", 2, ["None"])


class TestAssemble:
    def test_concatenation(self):
        deltas = [StreamDelta("ab"), StreamDelta("c", done=True)]
        assert assemble_stream(deltas) == "abc"

    def test_empty_translation(self):
        assert assemble_stream([StreamDelta("", done=True)]) == ""

    def test_delta_after_done(self):
        with pytest.raises(DeltaAfterDone):
            assemble_stream([StreamDelta("a", done=True), StreamDelta("b")])

    def test_truncated(self):
        with pytest.raises(StreamTruncated):
            assemble_stream([StreamDelta("a")])


class TestJob:
    def test_chunks_reconstruct_source(self):
        job = TranslationJob.create("甲乙丙丁" * 5, LanguageTag.KOREAN, max_units=3)
        assert "".join(job.chunks) == "甲乙丙丁" * 5

    def test_prompts_per_chunk(self):
        job = TranslationJob.create("甲乙", LanguageTag.ENGLISH, max_units=1)
        assert job.prompts() == [
            build_prompt(LanguageTag.HANJA, LanguageTag.ENGLISH, "甲"),
            build_prompt(LanguageTag.HANJA, LanguageTag.ENGLISH, "乙"),
        ]

    def test_state_moves_forward_only(self):
        job = TranslationJob.create("甲", LanguageTag.KOREAN)
        job.advance(JobState.STREAMING)
        job.advance(JobState.DONE)
        with pytest.raises(ValueError):
            job.advance(JobState.PENDING)

    def test_invalid_target(self):
        with pytest.raises(UnsupportedDirection):
            TranslationJob.create("甲", LanguageTag.HANJA)


@given(st.text(max_size=60), st.integers(1, 10))
def test_chunk_coverage(text, max_units):
    windows = chunk(text, max_units)
    assert "".join(windows) == text
    from hanjakit.textutil import char_count
    assert all(0 < char_count(w) <= max_units for w in windows)


@given(st.text(max_size=30), st.data())
def test_stream_regrouping_invariant(text, data):
    cuts = data.draw(
        st.lists(st.integers(0, len(text)), max_size=6).map(sorted)
    )
    bounds = [0] + cuts + [len(text)]
    deltas = [StreamDelta(text[a:b]) for a, b in zip(bounds, bounds[1:])]
    deltas.append(StreamDelta("", done=True))
    assert assemble_stream(deltas) == text
