"""Tri-lingual character glossary.

Combines a Hanja -> Hangul reading table with character-level English
definitions from CC-CEDICT and a templated external-dictionary link.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable
from urllib.parse import quote

from .textutil import chars


class GlossaryError(Exception):
    pass


class NotSingleCharacter(GlossaryError):
    pass


class BadLinkTemplate(GlossaryError):
    pass


@dataclass(frozen=True)
class CedictEntry:
    traditional: str
    simplified: str
    pinyin: str
    definitions: tuple[str, ...]


@dataclass(frozen=True)
class GlossaryEntry:
    char: str
    reading: str | None
    definitions: tuple[str, ...]
    link: str


# CC-CEDICT line: TRAD SIMP [pinyin] /def1/def2/
_CEDICT_LINE = re.compile(r"^(\S+) (\S+) \[([^\]]*)\] /(.+)/\s*$")


def parse_cedict(lines: Iterable[str]) -> tuple[list[CedictEntry], int]:
    """Parse CC-CEDICT text; returns (entries, skipped line count).

    Comments and blank lines are ignored; malformed lines are skipped and
    counted. Never raises on arbitrary input.
    """
    entries: list[CedictEntry] = []
    skipped = 0
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        m = _CEDICT_LINE.match(line)
        if m is None:
            skipped += 1
            continue
        trad, simp, pinyin, defs = m.groups()
        definitions = tuple(d for d in defs.split("/") if d)
        if not definitions:
            skipped += 1
            continue
        entries.append(CedictEntry(trad, simp, pinyin, definitions))
    return entries, skipped


def build_char_index(entries: Iterable[CedictEntry]) -> dict[str, tuple[str, ...]]:
    """Index definitions by single-character traditional form.

    Multi-character words never surface at the character level; for
    duplicate headwords, definitions are concatenated in file order.
    """
    index: dict[str, tuple[str, ...]] = {}
    for entry in entries:
        if len(chars(entry.traditional)) != 1:
            continue
        existing = index.get(entry.traditional, ())
        index[entry.traditional] = existing + entry.definitions
    return index


def build_word_index(entries: Iterable[CedictEntry]) -> dict[str, tuple[str, ...]]:
    """Whole-word lookup table (traditional form), reserved for word-level use."""
    index: dict[str, tuple[str, ...]] = {}
    for entry in entries:
        existing = index.get(entry.traditional, ())
        index[entry.traditional] = existing + entry.definitions
    return index


def load_readings(lines: Iterable[str]) -> tuple[dict[str, str], list[int]]:
    """Load a ``char<TAB>reading`` table; later duplicates win.

    Returns (table, malformed line numbers). Malformed lines are reported,
    not fatal.
    """
    table: dict[str, str] = {}
    malformed: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or len(chars(parts[0])) != 1 or not parts[1]:
            malformed.append(lineno)
            continue
        table[parts[0]] = parts[1]
    return table, malformed


@dataclass(frozen=True)
class LinkTemplate:
    """External dictionary URL template with a ``{q}`` placeholder."""

    template: str

    def __post_init__(self) -> None:
        if "{q}" not in self.template:
            raise BadLinkTemplate("link template must contain a {q} placeholder")

    def for_char(self, char: str) -> str:
        if len(chars(char)) != 1:
            raise NotSingleCharacter(f"expected one character, got {char!r}")
        return self.template.replace("{q}", quote(char, safe=""))


def annotate(
    text: str,
    readings: dict[str, str],
    definitions: dict[str, tuple[str, ...]],
    link_template: LinkTemplate,
) -> list[GlossaryEntry]:
    """Produce one glossary entry per character of ``text``.

    Characters absent from both tables still get an entry (empty reading
    and definitions) carrying the external link.
    """
    return [
        GlossaryEntry(
            char=ch,
            reading=readings.get(ch),
            definitions=definitions.get(ch, ()),
            link=link_template.for_char(ch),
        )
        for ch in chars(text)
    ]
