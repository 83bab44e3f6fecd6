from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from hanjakit.glossary import (
    BadLinkTemplate,
    CedictEntry,
    LinkTemplate,
    NotSingleCharacter,
    annotate,
    build_char_index,
    build_word_index,
    load_readings,
    parse_cedict,
)
from hanjakit.textutil import char_count

SAMPLE = Path(__file__).parent / "data" / "cedict_sample.u8"


class TestParseCedict:
    def test_basic_entry(self):
        entries, skipped = parse_cedict(["中國 中国 [Zhong1 guo2] /China/"])
        assert skipped == 0
        assert entries == [CedictEntry("中國", "中国", "Zhong1 guo2", ("China",))]

    def test_comment_line(self):
        assert parse_cedict(["# CC-CEDICT"]) == ([], 0)

    def test_malformed_line(self):
        entries, skipped = parse_cedict(["garbage line"])
        assert entries == [] and skipped == 1

    def test_multiple_definitions(self):
        entries, _ = parse_cedict(["學 学 [xue2] /to learn/to study/"])
        assert entries[0].definitions == ("to learn", "to study")

    def test_pinned_sample(self):
        with open(SAMPLE, encoding="utf-8") as fh:
            entries, skipped = parse_cedict(fh)
        assert len(entries) == 94
        assert skipped == 5
        china = [e for e in entries if e.traditional == "中國"]
        assert china == [CedictEntry("中國", "中国", "Zhong1 guo2", ("China",))]


class TestIndexes:
    def test_char_index_single_char_only(self):
        entries, _ = parse_cedict(
            ["學 学 [xue2] /to learn/", "中國 中国 [Zhong1 guo2] /China/"]
        )
        index = build_char_index(entries)
        assert index == {"學": ("to learn",)}

    def test_word_index_keeps_multichar(self):
        entries, _ = parse_cedict(["中國 中国 [Zhong1 guo2] /China/"])
        assert build_word_index(entries) == {"中國": ("China",)}

    def test_duplicate_headwords_concatenate(self):
        entries, _ = parse_cedict(
            ["行 行 [xing2] /to walk/", "行 行 [hang2] /row/profession/"]
        )
        assert build_char_index(entries)["行"] == ("to walk", "row", "profession")


class TestReadings:
    def test_basic(self):
        table, malformed = load_readings(["學\t학"])
        assert table == {"學": "학"} and malformed == []

    def test_empty_stream(self):
        assert load_readings([]) == ({}, [])

    def test_last_wins(self):
        table, _ = load_readings(["學\t학", "學\t교"])
        assert table == {"學": "교"}

    def test_malformed_reported_with_line_number(self):
        table, malformed = load_readings(["學\t학", "no-tab-here", "中\t중"])
        assert table == {"學": "학", "中": "중"}
        assert malformed == [2]


class TestLinkTemplate:
    def test_percent_encoding(self):
        template = LinkTemplate("https://example-dict/{q}")
        assert template.for_char("學") == "https://example-dict/%E5%AD%B8"

    def test_missing_placeholder_rejected(self):
        with pytest.raises(BadLinkTemplate):
            LinkTemplate("https://example-dict/")

    def test_multi_char_rejected(self):
        with pytest.raises(NotSingleCharacter):
            LinkTemplate("x{q}").for_char("中國")


class TestAnnotate:
    TEMPLATE = LinkTemplate("https://example-dict/{q}")

    def test_known_character(self):
        entries = annotate("學", {"學": "학"}, {"學": ("to learn", "to study")}, self.TEMPLATE)
        assert len(entries) == 1
        entry = entries[0]
        assert entry.reading == "학"
        assert entry.definitions == ("to learn", "to study")
        assert entry.link == "https://example-dict/%E5%AD%B8"

    def test_empty_text(self):
        assert annotate("", {}, {}, self.TEMPLATE) == []

    def test_unknown_character_fallback(self):
        (entry,) = annotate("子", {}, {}, self.TEMPLATE)
        assert entry.reading is None
        assert entry.definitions == ()
        assert entry.link


@given(st.lists(st.text(max_size=40), max_size=20))
def test_parse_cedict_total(lines):
    entries, skipped = parse_cedict(lines)
    assert skipped >= 0
    for entry in entries:
        assert entry.traditional and entry.simplified and entry.definitions


@given(st.text(max_size=40))
def test_annotate_length(text):
    template = LinkTemplate("https://example-dict/{q}")
    assert len(annotate(text, {}, {}, template)) == char_count(text)
