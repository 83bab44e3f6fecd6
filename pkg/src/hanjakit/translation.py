"""Machine-translation orchestration: prompts, chunking, stream assembly."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .punctuation import PunctLabelRegistry, SimpleProjection, default_registry
from .textutil import chars

#: Conservative per-window character budget against a 512-token model context.
DEFAULT_MAX_UNITS = 384


class TranslationError(Exception):
    pass


class UnsupportedDirection(TranslationError):
    pass


class EmptyText(TranslationError):
    pass


class StreamTruncated(TranslationError):
    pass


class DeltaAfterDone(TranslationError):
    pass


class LanguageTag(enum.Enum):
    HANJA = "Hanja"
    KOREAN = "Korean"
    ENGLISH = "English"


TARGET_LANGUAGES = (LanguageTag.KOREAN, LanguageTag.ENGLISH)


def build_prompt(source: LanguageTag, target: LanguageTag, text: str) -> str:
    """Instantiate the translation prompt template, byte-exactly."""
    if source is not LanguageTag.HANJA or target not in TARGET_LANGUAGES:
        raise UnsupportedDirection(f"{source.value} -> {target.value} is not supported")
    if not text:
        raise EmptyText("cannot build a prompt for empty text")
    return (
        f"Translate the following text from {source.value} into {target.value}.\n"
        f"{source.value}: {text}\n"
        f"{target.value}:"
    )


def chunk(
    text: str,
    max_units: int = DEFAULT_MAX_UNITS,
    boundary_labels: Sequence[str] | None = None,
    registry: PunctLabelRegistry | None = None,
) -> list[str]:
    """Split ``text`` into windows of at most ``max_units`` characters.

    Windows cover the text exactly once, in order. When a label sequence
    is given, breaks prefer the position right after a Period-family
    label inside the window, falling back to a hard split.
    """
    if max_units <= 0:
        raise ValueError("max_units must be positive")
    units = chars(text)
    n = len(units)
    if boundary_labels is not None and len(boundary_labels) != n:
        raise ValueError("boundary_labels length must match character count")
    period_after: set[int] = set()
    if boundary_labels is not None:
        registry = registry or default_registry()
        for i, label_id in enumerate(boundary_labels):
            if registry.get(label_id).simple_projection is SimpleProjection.PERIOD:
                period_after.add(i + 1)
    windows: list[str] = []
    pos = 0
    while pos < n:
        limit = min(pos + max_units, n)
        if limit < n:
            breaks = [b for b in period_after if pos < b <= limit]
            if breaks:
                limit = max(breaks)
        windows.append("".join(units[pos:limit]))
        pos = limit
    return windows


@dataclass(frozen=True)
class StreamDelta:
    text: str
    done: bool = False


class JobState(enum.Enum):
    PENDING = "pending"
    STREAMING = "streaming"
    DONE = "done"
    FAILED = "failed"


_STATE_ORDER = [JobState.PENDING, JobState.STREAMING, JobState.DONE, JobState.FAILED]


@dataclass
class TranslationJob:
    """One translation request: chunked source plus per-chunk prompts."""

    source_text: str
    target: LanguageTag
    chunks: list[str] = field(default_factory=list)
    state: JobState = JobState.PENDING

    @classmethod
    def create(
        cls,
        source_text: str,
        target: LanguageTag,
        max_units: int = DEFAULT_MAX_UNITS,
        boundary_labels: Sequence[str] | None = None,
        registry: PunctLabelRegistry | None = None,
    ) -> "TranslationJob":
        if not source_text:
            raise EmptyText("cannot translate empty text")
        if target not in TARGET_LANGUAGES:
            raise UnsupportedDirection(f"target {target.value} is not supported")
        return cls(
            source_text=source_text,
            target=target,
            chunks=chunk(source_text, max_units, boundary_labels, registry),
        )

    def prompts(self) -> list[str]:
        return [build_prompt(LanguageTag.HANJA, self.target, c) for c in self.chunks]

    def advance(self, state: JobState) -> None:
        if _STATE_ORDER.index(state) < _STATE_ORDER.index(self.state):
            raise ValueError(f"cannot move from {self.state.value} back to {state.value}")
        self.state = state


def assemble_stream(deltas: Iterable[StreamDelta]) -> str:
    """Concatenate delta texts; exactly one done=true delta, and it is last."""
    parts: list[str] = []
    finished = False
    for delta in deltas:
        if finished:
            raise DeltaAfterDone("received a delta after the done marker")
        parts.append(delta.text)
        if delta.done:
            finished = True
    if not finished:
        raise StreamTruncated("stream ended without a done marker")
    return "".join(parts)
