"""Wires configuration into live components shared by the gateway and CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import timedelta
from pathlib import Path
from typing import Iterator

from . import glossary as glossary_mod
from .backends import (
    Capability,
    ReferenceBackend,
    RemoteBackend,
    WindowPlan,
    load_gazetteer,
    load_punct_rules,
    run_windowed,
)
from .config import AppConfig, ConfigError
from .entities import EntitySpan, decode_iob2
from .persistence import Store
from .punctuation import (
    PUNCTUATION_ALPHABET,
    PunctLabelRegistry,
    RenderMode,
    align_offsets,
    apply_labels,
    strip_punctuation,
)
from .textutil import char_count, chars
from .translation import LanguageTag, StreamDelta, TranslationJob


class UnknownBackend(Exception):
    pass


class InputTooLarge(Exception):
    pass


def _read_lines(path: str) -> list[str]:
    try:
        return Path(path).read_text("utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


@dataclass
class Runtime:
    config: AppConfig
    registry: PunctLabelRegistry
    backends: dict[str, object]
    readings: dict[str, str]
    definitions: dict[str, tuple[str, ...]]
    link_template: glossary_mod.LinkTemplate
    plan: WindowPlan = field(default_factory=WindowPlan)
    _store: Store | None = None

    @property
    def store(self) -> Store:
        """Opened lazily so store-free paths (batch CLI) touch no database."""
        if self._store is None:
            self._store = Store(
                self.config.db_path,
                session_ttl=timedelta(days=self.config.session_ttl_days),
                registry=self.registry,
            )
        return self._store

    @classmethod
    def from_config(cls, config: AppConfig, store: Store | None = None) -> "Runtime":
        registry = PunctLabelRegistry.from_lines(
            _read_lines(config.registry_path), expect_count=23
        )
        readings, _ = glossary_mod.load_readings(_read_lines(config.readings_path))
        entries, _ = glossary_mod.parse_cedict(_read_lines(config.cedict_path))
        definitions = glossary_mod.build_char_index(entries)
        reference = ReferenceBackend(
            punct_rules=load_punct_rules(_read_lines(config.punct_rules_path)),
            gazetteer=load_gazetteer(_read_lines(config.gazetteer_path)),
            readings=readings,
            definitions=definitions,
            registry=registry,
        )
        backends: dict[str, object] = {reference.name: reference}
        for descriptor in config.remote_backends:
            backends[descriptor.name] = RemoteBackend(
                descriptor, registry=registry, max_in_flight=config.max_in_flight
            )
        if config.default_backend not in backends:
            raise ConfigError(f"default backend {config.default_backend!r} not configured")
        return cls(
            config=config,
            registry=registry,
            backends=backends,
            _store=store,
            readings=readings,
            definitions=definitions,
            link_template=glossary_mod.LinkTemplate(config.link_template),
            plan=WindowPlan(config.window_size, config.stride),
        )

    def backend(self, name: str | None = None, capability: Capability | None = None):
        name = name or self.config.default_backend
        try:
            backend = self.backends[name]
        except KeyError:
            raise UnknownBackend(f"no backend named {name!r}") from None
        if capability is not None and capability not in backend.capabilities:
            raise UnknownBackend(f"backend {name!r} lacks {capability.value}")
        return backend

    def check_size(self, text: str) -> None:
        if char_count(text) > self.config.input_limit:
            raise InputTooLarge(
                f"input exceeds the {self.config.input_limit}-character limit"
            )

    # -- task pipelines ---------------------------------------------------

    def punctuate(
        self, text: str, mode: RenderMode, backend_name: str | None = None
    ) -> dict:
        """Strip pre-existing punctuation if any, label, render, align."""
        self.check_size(text)
        stripped = any(ch in PUNCTUATION_ALPHABET for ch in chars(text))
        if stripped:
            text, _ = strip_punctuation(text, self.registry)
        backend = self.backend(backend_name, Capability.PUNCTUATE)
        labels = run_windowed(text, self.plan, backend.label_punctuation)
        return {
            "text": text,
            "labels": labels,
            "rendered": apply_labels(text, labels, mode, self.registry),
            "offsets": align_offsets(text, labels, mode, self.registry),
            "stripped": stripped,
        }

    def ner(self, text: str, backend_name: str | None = None) -> tuple[list[str], list[EntitySpan]]:
        self.check_size(text)
        backend = self.backend(backend_name, Capability.NER)
        tags = run_windowed(text, self.plan, backend.tag_entities)
        return tags, decode_iob2(tags)

    def translation_job(self, text: str, target: LanguageTag) -> TranslationJob:
        self.check_size(text)
        boundary = None
        if char_count(text) > self.config.chunk_max_units and not any(
            ch in PUNCTUATION_ALPHABET for ch in chars(text)
        ):
            reference = self.backend(None, Capability.PUNCTUATE)
            boundary = run_windowed(text, self.plan, reference.label_punctuation)
        return TranslationJob.create(
            text,
            target,
            max_units=self.config.chunk_max_units,
            boundary_labels=boundary,
            registry=self.registry,
        )

    def translate_deltas(
        self, text: str, target: LanguageTag, backend_name: str | None = None
    ) -> Iterator[StreamDelta]:
        backend = self.backend(backend_name, Capability.TRANSLATE)
        job = self.translation_job(text, target)
        return backend.translate_stream(job)

    def glossary_entries(self, text: str) -> list[glossary_mod.GlossaryEntry]:
        self.check_size(text)
        return glossary_mod.annotate(
            text, self.readings, self.definitions, self.link_template
        )
