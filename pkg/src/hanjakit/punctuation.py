"""Punctuation label algebra.

A document is annotated with one label per character; a label carries the
punctuation glyphs inserted immediately after its carrier character.
Opening quotes belong to the label of the character they follow, which
keeps the label sequence aligned 1:1 with the raw text.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

from .textutil import chars

#: Fullwidth CJK punctuation plus corner brackets and parentheses. Every
#: registry glyph must come from this set; raw Hanja text must contain none.
PUNCTUATION_ALPHABET = frozenset("，、。？！：；「」『』（）")

NONE_LABEL_ID = "None"


class PunctuationError(Exception):
    """Base class for punctuation-layer failures."""


class LengthMismatch(PunctuationError):
    pass


class UnknownLabel(PunctuationError):
    pass


class UnrecognizedGlyphRun(PunctuationError):
    pass


class LeadingPunctuation(PunctuationError):
    pass


class RegistryError(PunctuationError):
    pass


class RenderMode(enum.Enum):
    COMPREHENSIVE = "Comprehensive"
    SIMPLE = "Simple"
    SIMPLE_WITH_SPACE = "SimpleWithSpace"


class SimpleProjection(enum.Enum):
    NONE = "None"
    COMMA = "Comma"
    PERIOD = "Period"
    QUESTION = "Question"

    @property
    def glyph(self) -> str:
        return _PROJECTION_GLYPHS[self]


_PROJECTION_GLYPHS = {
    SimpleProjection.NONE: "",
    SimpleProjection.COMMA: "，",
    SimpleProjection.PERIOD: "。",
    SimpleProjection.QUESTION: "？",
}


@dataclass(frozen=True)
class PunctLabel:
    id: str
    glyphs: str
    simple_projection: SimpleProjection

    def __post_init__(self) -> None:
        if self.id == NONE_LABEL_ID:
            if self.glyphs:
                raise RegistryError("the None label must carry no glyphs")
        elif not self.glyphs:
            raise RegistryError(f"label {self.id!r} has an empty glyph sequence")
        bad = set(self.glyphs) - PUNCTUATION_ALPHABET
        if bad:
            raise RegistryError(
                f"label {self.id!r} uses glyphs outside the punctuation alphabet: "
                + "".join(sorted(bad))
            )


NONE_LABEL = PunctLabel(NONE_LABEL_ID, "", SimpleProjection.NONE)


class PunctLabelRegistry:
    """Immutable id -> label table with a reverse glyphs -> label index.

    Glyph sequences must be unique across labels; without that,
    :func:`strip_punctuation` could not be lossless.
    """

    def __init__(self, labels: Iterable[PunctLabel], *, expect_count: int | None = None):
        by_id: dict[str, PunctLabel] = {}
        by_glyphs: dict[str, PunctLabel] = {}
        for label in labels:
            if label.id in by_id:
                raise RegistryError(f"duplicate label id {label.id!r}")
            by_id[label.id] = label
            if label.glyphs:
                if label.glyphs in by_glyphs:
                    raise RegistryError(
                        f"labels {by_glyphs[label.glyphs].id!r} and {label.id!r} "
                        f"share the glyph sequence {label.glyphs!r}"
                    )
                by_glyphs[label.glyphs] = label
        by_id.setdefault(NONE_LABEL_ID, NONE_LABEL)
        self._by_id = by_id
        self._by_glyphs = by_glyphs
        non_none = len(by_id) - 1
        if expect_count is not None and non_none != expect_count:
            raise RegistryError(
                f"expected {expect_count} non-None labels, found {non_none}"
            )

    def __contains__(self, label_id: str) -> bool:
        return label_id in self._by_id

    def __len__(self) -> int:
        return len(self._by_id)

    @property
    def non_none_count(self) -> int:
        return len(self._by_id) - 1

    def get(self, label_id: str) -> PunctLabel:
        try:
            return self._by_id[label_id]
        except KeyError:
            raise UnknownLabel(f"label id {label_id!r} is not registered") from None

    def label_for_glyphs(self, glyphs: str) -> PunctLabel | None:
        return self._by_glyphs.get(glyphs)

    def label_ids(self) -> list[str]:
        return list(self._by_id)

    def non_none_ids(self) -> list[str]:
        return [i for i in self._by_id if i != NONE_LABEL_ID]

    @classmethod
    def from_lines(cls, lines: Iterable[str], *, expect_count: int | None = None) -> "PunctLabelRegistry":
        """Parse the registry file format: ``id<TAB>glyphs<TAB>projection``.

        Blank lines and ``#`` comments are skipped. The None row is
        permitted with empty glyphs.
        """
        labels = []
        for lineno, line in enumerate(lines, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise RegistryError(f"line {lineno}: expected 3 tab-separated fields")
            label_id, glyphs, projection = parts
            try:
                proj = SimpleProjection(projection)
            except ValueError:
                raise RegistryError(
                    f"line {lineno}: unknown simple projection {projection!r}"
                ) from None
            labels.append(PunctLabel(label_id, glyphs, proj))
        return cls(labels, expect_count=expect_count)

    @classmethod
    def from_file(cls, path, *, expect_count: int | None = None) -> "PunctLabelRegistry":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh, expect_count=expect_count)


_default_registry: PunctLabelRegistry | None = None


def default_registry() -> PunctLabelRegistry:
    """The bundled 23-label registry."""
    global _default_registry
    if _default_registry is None:
        text = resources.files("hanjakit.data").joinpath("registry.tsv").read_text("utf-8")
        _default_registry = PunctLabelRegistry.from_lines(
            text.splitlines(), expect_count=23
        )
    return _default_registry


def _resolve(
    text: str, label_ids: list[str], registry: PunctLabelRegistry
) -> tuple[list[str], list[PunctLabel]]:
    raw = chars(text)
    if len(label_ids) != len(raw):
        raise LengthMismatch(
            f"{len(label_ids)} labels for {len(raw)} characters"
        )
    return raw, [registry.get(i) for i in label_ids]


def _rendered_glyphs(label: PunctLabel, mode: RenderMode, *, last: bool) -> str:
    if mode is RenderMode.COMPREHENSIVE:
        return label.glyphs
    glyph = label.simple_projection.glyph
    if mode is RenderMode.SIMPLE_WITH_SPACE and glyph and not last:
        return glyph + " "
    return glyph


def apply_labels(
    text: str,
    label_ids: list[str],
    mode: RenderMode,
    registry: PunctLabelRegistry | None = None,
) -> str:
    """Render ``text`` with each character's label glyphs inserted after it."""
    registry = registry or default_registry()
    raw, labels = _resolve(text, label_ids, registry)
    out: list[str] = []
    n = len(raw)
    for i, (ch, label) in enumerate(zip(raw, labels)):
        out.append(ch)
        out.append(_rendered_glyphs(label, mode, last=i == n - 1))
    return "".join(out)


def strip_punctuation(
    punctuated: str, registry: PunctLabelRegistry | None = None
) -> tuple[str, list[str]]:
    """Invert Comprehensive rendering: recover (raw text, label ids).

    Each maximal run of punctuation glyphs is attributed to the preceding
    character and must match exactly one registered glyph sequence.
    """
    registry = registry or default_registry()
    raw: list[str] = []
    label_ids: list[str] = []
    run = ""
    for ch in chars(punctuated):
        if ch in PUNCTUATION_ALPHABET:
            if not raw:
                raise LeadingPunctuation(
                    f"input begins with punctuation glyph {ch!r}"
                )
            run += ch
        else:
            if run:
                _attach_run(run, label_ids, registry)
                run = ""
            raw.append(ch)
            label_ids.append(NONE_LABEL_ID)
    if run:
        _attach_run(run, label_ids, registry)
    return "".join(raw), label_ids


def _attach_run(run: str, label_ids: list[str], registry: PunctLabelRegistry) -> None:
    label = registry.label_for_glyphs(run)
    if label is None:
        raise UnrecognizedGlyphRun(f"no registered label renders as {run!r}")
    label_ids[-1] = label.id


def align_offsets(
    text: str,
    label_ids: list[str],
    mode: RenderMode,
    registry: PunctLabelRegistry | None = None,
) -> list[int]:
    """Map each raw character index to its index in the rendered string.

    Indices are in grapheme units on both sides; the map is strictly
    increasing and ``rendered[map[i]] == text[i]``.
    """
    registry = registry or default_registry()
    raw, labels = _resolve(text, label_ids, registry)
    offsets: list[int] = []
    pos = 0
    n = len(raw)
    for i, label in enumerate(labels):
        offsets.append(pos)
        pos += 1 + len(chars(_rendered_glyphs(label, mode, last=i == n - 1)))
    return offsets
