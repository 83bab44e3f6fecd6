"""Model backends: the pluggable task contract, a deterministic rule-based
reference backend, a remote-inference client, and sliding-window
orchestration for the bounded-context sequence labelers.
"""
from __future__ import annotations

import enum
import json
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import httpx

from .entities import TAG_ALPHABET, EntityType, decode_iob2, encode_iob2
from .punctuation import NONE_LABEL_ID, PunctLabelRegistry, default_registry
from .textutil import char_count, chars
from .translation import LanguageTag, StreamDelta, TranslationJob

DEFAULT_WINDOW_SIZE = 384
DEFAULT_STRIDE = 256
DEFAULT_MAX_IN_FLIGHT = 32

#: Characters per streamed fragment from the reference backend.
_FRAGMENT_CHARS = 8

#: Placeholder emitted for characters with no known gloss or reading.
GLOSS_PLACEHOLDER = "…"


class BackendError(Exception):
    pass


class BackendUnavailable(BackendError):
    pass


class InvalidBackendResponse(BackendError):
    pass


class Capability(enum.Enum):
    PUNCTUATE = "punctuate"
    NER = "ner"
    TRANSLATE = "translate"


@dataclass(frozen=True)
class BackendDescriptor:
    name: str
    kind: str  # "reference" | "remote"
    capabilities: frozenset[Capability]
    endpoint: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("reference", "remote"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if not self.capabilities:
            raise ValueError("backend capabilities must be non-empty")
        if self.kind == "remote" and not self.endpoint:
            raise ValueError("remote backends require an endpoint")


@dataclass(frozen=True)
class WindowPlan:
    window_size: int = DEFAULT_WINDOW_SIZE
    stride: int = DEFAULT_STRIDE

    def __post_init__(self) -> None:
        if not 0 < self.stride <= self.window_size:
            raise ValueError(
                f"need 0 < stride <= window_size, got {self.stride}/{self.window_size}"
            )


def run_windowed(
    text: str,
    plan: WindowPlan,
    labeler: Callable[[str], Sequence[str]],
) -> list[str]:
    """Label long text with overlapping windows, merging by center preference.

    Each character takes its prediction from the window whose center it is
    closest to; ties go to the earlier window.
    """
    units = chars(text)
    n = len(units)
    if n == 0:
        return []
    starts = [0]
    while starts[-1] + plan.window_size < n:
        starts.append(starts[-1] + plan.stride)
    merged: list[str | None] = [None] * n
    best_dist = [float("inf")] * n
    for start in starts:
        end = min(start + plan.window_size, n)
        window_labels = labeler("".join(units[start:end]))
        if len(window_labels) != end - start:
            raise InvalidBackendResponse(
                f"labeler returned {len(window_labels)} labels for a "
                f"{end - start}-character window"
            )
        center = (start + end - 1) / 2
        for i in range(start, end):
            dist = abs(i - center)
            if dist < best_dist[i]:
                best_dist[i] = dist
                merged[i] = window_labels[i - start]
    return merged  # type: ignore[return-value]


def load_punct_rules(lines: Iterable[str]) -> dict[str, str]:
    """``char<TAB>label_id`` trigger table for the reference punctuator."""
    rules: dict[str, str] = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        char, label_id = line.split("\t")
        rules[char] = label_id
    return rules


def load_gazetteer(lines: Iterable[str]) -> dict[str, EntityType]:
    """``word<TAB>type-code`` table for the reference entity tagger."""
    gazetteer: dict[str, EntityType] = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        word, code = line.split("\t")
        gazetteer[word] = EntityType(code)
    return gazetteer


class ReferenceBackend:
    """Deterministic rule-based substitute for the neural models.

    Exists so the full platform runs and tests without model weights:
    punctuation from a per-character trigger table, entities from
    longest-match gazetteer scanning, translation from per-character
    glossary lookups.
    """

    kind = "reference"
    capabilities = frozenset(Capability)

    def __init__(
        self,
        punct_rules: dict[str, str],
        gazetteer: dict[str, EntityType],
        readings: dict[str, str],
        definitions: dict[str, tuple[str, ...]],
        registry: PunctLabelRegistry | None = None,
        name: str = "reference",
    ):
        self.name = name
        self._registry = registry or default_registry()
        for label_id in punct_rules.values():
            self._registry.get(label_id)  # fail fast on unknown ids
        self._punct_rules = dict(punct_rules)
        self._gazetteer = dict(gazetteer)
        self._max_word = max((char_count(w) for w in gazetteer), default=1)
        self._readings = readings
        self._definitions = definitions

    def label_punctuation(self, text: str) -> list[str]:
        return [self._punct_rules.get(ch, NONE_LABEL_ID) for ch in chars(text)]

    def tag_entities(self, text: str) -> list[str]:
        units = chars(text)
        tags = ["O"] * len(units)
        i = 0
        while i < len(units):
            match_len = 0
            match_type: EntityType | None = None
            for width in range(min(self._max_word, len(units) - i), 0, -1):
                word = "".join(units[i : i + width])
                etype = self._gazetteer.get(word)
                if etype is not None:
                    match_len, match_type = width, etype
                    break
            if match_type is None:
                i += 1
                continue
            tags[i] = f"B-{match_type.value}"
            for j in range(i + 1, i + match_len):
                tags[j] = f"I-{match_type.value}"
            i += match_len
        return tags

    def _translate_chunk(self, text: str, target: LanguageTag) -> str:
        words = []
        for ch in chars(text):
            if target is LanguageTag.KOREAN:
                words.append(self._readings.get(ch, GLOSS_PLACEHOLDER))
            else:
                defs = self._definitions.get(ch)
                words.append(defs[0] if defs else GLOSS_PLACEHOLDER)
        return " ".join(words)

    def translate_stream(self, job: TranslationJob) -> Iterator[StreamDelta]:
        full = "\n".join(self._translate_chunk(c, job.target) for c in job.chunks)
        units = chars(full)
        for i in range(0, len(units), _FRAGMENT_CHARS):
            yield StreamDelta("".join(units[i : i + _FRAGMENT_CHARS]))
        yield StreamDelta("", done=True)


class RemoteBackend:
    """HTTP client for remote inference servers.

    Sequence labeling: POST ``{v:1, task:"punct"|"ner", text}`` returning
    ``{v:1, labels:[...]}``. Translation: POST ``{v:1, prompt}`` returning
    a newline-delimited JSON stream of ``{delta, done}`` objects.
    Responses are validated (length, alphabet) before anything is returned.
    """

    kind = "remote"

    def __init__(
        self,
        descriptor: BackendDescriptor,
        registry: PunctLabelRegistry | None = None,
        max_in_flight: int = DEFAULT_MAX_IN_FLIGHT,
        timeout: float = 30.0,
        client: httpx.Client | None = None,
    ):
        if descriptor.kind != "remote":
            raise ValueError("RemoteBackend needs a remote descriptor")
        self.name = descriptor.name
        self.capabilities = descriptor.capabilities
        self._endpoint = descriptor.endpoint
        self._registry = registry or default_registry()
        self._slots = threading.BoundedSemaphore(max_in_flight)
        self._client = client or httpx.Client(timeout=timeout)

    def _post_labels(self, task: str, text: str) -> list[str]:
        with self._slots:
            try:
                response = self._client.post(
                    self._endpoint, json={"v": 1, "task": task, "text": text}
                )
                response.raise_for_status()
            except httpx.HTTPError as exc:
                raise BackendUnavailable(str(exc)) from exc
        try:
            body = response.json()
        except ValueError as exc:
            raise InvalidBackendResponse("response is not JSON") from exc
        if body.get("v") != 1 or not isinstance(body.get("labels"), list):
            raise InvalidBackendResponse("missing v/labels fields")
        labels = body["labels"]
        if len(labels) != char_count(text):
            raise InvalidBackendResponse(
                f"{len(labels)} labels for {char_count(text)} characters"
            )
        return labels

    def label_punctuation(self, text: str) -> list[str]:
        labels = self._post_labels("punct", text)
        for label_id in labels:
            if label_id not in self._registry:
                raise InvalidBackendResponse(f"unregistered label {label_id!r}")
        return labels

    def tag_entities(self, text: str) -> list[str]:
        tags = self._post_labels("ner", text)
        for tag in tags:
            if tag not in TAG_ALPHABET:
                raise InvalidBackendResponse(f"tag {tag!r} outside the IOB2 alphabet")
        # lenient repair: re-encode through the span codec
        return encode_iob2(decode_iob2(tags), len(tags))

    def translate_stream(self, job: TranslationJob) -> Iterator[StreamDelta]:
        prompts = job.prompts()
        for index, prompt in enumerate(prompts):
            if index > 0:
                yield StreamDelta("\n")
            yield from self._stream_one(prompt)
        yield StreamDelta("", done=True)

    def _stream_one(self, prompt: str) -> Iterator[StreamDelta]:
        with self._slots:
            try:
                with self._client.stream(
                    "POST", self._endpoint, json={"v": 1, "prompt": prompt}
                ) as response:
                    response.raise_for_status()
                    finished = False
                    for line in response.iter_lines():
                        if not line.strip():
                            continue
                        try:
                            event = json.loads(line)
                        except ValueError as exc:
                            raise InvalidBackendResponse(
                                "stream line is not JSON"
                            ) from exc
                        if finished:
                            raise InvalidBackendResponse("delta after done marker")
                        if event.get("done"):
                            finished = True
                            if event.get("delta"):
                                yield StreamDelta(event["delta"])
                        elif event.get("delta"):
                            yield StreamDelta(event["delta"])
                    if not finished:
                        raise InvalidBackendResponse("stream ended without done marker")
            except httpx.HTTPError as exc:
                raise BackendUnavailable(str(exc)) from exc
