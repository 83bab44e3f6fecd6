"""IOB2 tag codec and entity-span editing semantics.

Spans are half-open character intervals over the raw (unpunctuated) text,
kept sorted and pairwise non-overlapping.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence


class EntityError(Exception):
    pass


class UnknownTag(EntityError):
    pass


class SpanOutOfRange(EntityError):
    pass


class OverlappingSpans(EntityError):
    pass


class EntityType(enum.Enum):
    PERSON = "PER"
    LOCATION = "LOC"
    ORGANIZATION = "ORG"
    MISC = "MISC"


_TYPE_BY_CODE = {t.value: t for t in EntityType}

OUTSIDE = "O"

#: Wire alphabet for tag sequences.
TAG_ALPHABET = frozenset(
    {OUTSIDE} | {f"{p}-{t.value}" for p in ("B", "I") for t in EntityType}
)


@dataclass(frozen=True)
class EntitySpan:
    start: int
    end: int
    etype: EntityType

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise SpanOutOfRange(f"invalid span [{self.start}, {self.end})")

    def contains(self, pos: int) -> bool:
        return self.start <= pos < self.end

    def overlaps(self, other: "EntitySpan") -> bool:
        return self.start < other.end and other.start < self.end


def _parse_tag(tag: str) -> tuple[str, EntityType | None]:
    if tag == OUTSIDE:
        return OUTSIDE, None
    if tag not in TAG_ALPHABET:
        raise UnknownTag(f"tag {tag!r} is outside the IOB2 alphabet")
    prefix, code = tag.split("-", 1)
    return prefix, _TYPE_BY_CODE[code]


def decode_iob2(tags: Sequence[str]) -> list[EntitySpan]:
    """Decode a tag sequence into sorted, non-overlapping spans.

    Lenient: an I- tag that cannot continue the open span (no open span,
    or a different type) is treated as B-.
    """
    spans: list[EntitySpan] = []
    start: int | None = None
    current: EntityType | None = None

    def close(end: int) -> None:
        nonlocal start, current
        if start is not None:
            spans.append(EntitySpan(start, end, current))
            start, current = None, None

    for i, tag in enumerate(tags):
        prefix, etype = _parse_tag(tag)
        if prefix == OUTSIDE:
            close(i)
        elif prefix == "B" or etype is not current:
            close(i)
            start, current = i, etype
    close(len(tags))
    return spans


def encode_iob2(spans: Iterable[EntitySpan], length: int) -> list[str]:
    """Encode spans into a tag sequence of the given length."""
    tags = [OUTSIDE] * length
    previous: EntitySpan | None = None
    for span in sorted(spans, key=lambda s: s.start):
        if span.end > length:
            raise SpanOutOfRange(f"span [{span.start}, {span.end}) exceeds length {length}")
        if previous is not None and previous.overlaps(span):
            raise OverlappingSpans(f"{previous} overlaps {span}")
        tags[span.start] = f"B-{span.etype.value}"
        for i in range(span.start + 1, span.end):
            tags[i] = f"I-{span.etype.value}"
        previous = span
    return tags


def add_span(
    spans: Sequence[EntitySpan], new: EntitySpan, length: int | None = None
) -> list[EntitySpan]:
    """Insert ``new``, replacing any spans it overlaps (editor drag-to-tag).

    Touching spans are kept: intervals are half-open, so [0,2) and [2,4)
    do not overlap.
    """
    if length is not None and new.end > length:
        raise SpanOutOfRange(f"span [{new.start}, {new.end}) exceeds length {length}")
    kept = [s for s in spans if not s.overlaps(new)]
    kept.append(new)
    kept.sort(key=lambda s: s.start)
    return kept


def remove_span_at(spans: Sequence[EntitySpan], pos: int) -> list[EntitySpan]:
    """Remove the span containing ``pos``; no-op when no span covers it."""
    return [s for s in spans if not s.contains(pos)]
