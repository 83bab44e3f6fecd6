"""Platform configuration: one JSON file plus environment overrides."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .backends import BackendDescriptor, Capability


class ConfigError(Exception):
    pass


DEFAULT_LINK_TEMPLATE = "https://hanja.dict.naver.com/search?query={q}"

#: Environment variable prefix for overrides, e.g. HANJAKIT_PORT=9000.
ENV_PREFIX = "HANJAKIT_"

_ENV_FIELDS = {
    "HOST": ("host", str),
    "PORT": ("port", int),
    "INPUT_LIMIT": ("input_limit", int),
    "DB_PATH": ("db_path", str),
    "SESSION_TTL_DAYS": ("session_ttl_days", int),
    "LINK_TEMPLATE": ("link_template", str),
    "DEFAULT_BACKEND": ("default_backend", str),
}


def _data_path(name: str) -> str:
    return str(resources.files("hanjakit.data").joinpath(name))


@dataclass(frozen=True)
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8600
    input_limit: int = 20_000
    db_path: str = "hanjakit.db"
    session_ttl_days: int = 30
    registry_path: str = field(default_factory=lambda: _data_path("registry.tsv"))
    punct_rules_path: str = field(default_factory=lambda: _data_path("punct_rules.tsv"))
    gazetteer_path: str = field(default_factory=lambda: _data_path("gazetteer.tsv"))
    readings_path: str = field(default_factory=lambda: _data_path("readings.tsv"))
    cedict_path: str = field(default_factory=lambda: _data_path("cedict.u8"))
    link_template: str = DEFAULT_LINK_TEMPLATE
    default_backend: str = "reference"
    remote_backends: tuple[BackendDescriptor, ...] = ()
    window_size: int = 384
    stride: int = 256
    chunk_max_units: int = 384
    max_in_flight: int = 32


def load_config(path: str | os.PathLike | None = None, env: dict | None = None) -> AppConfig:
    """Build an AppConfig from an optional JSON file and the environment."""
    values: dict = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text("utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except ValueError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        remotes = []
        for item in raw.pop("remote_backends", []):
            try:
                remotes.append(
                    BackendDescriptor(
                        name=item["name"],
                        kind="remote",
                        capabilities=frozenset(
                            Capability(c) for c in item["capabilities"]
                        ),
                        endpoint=item["endpoint"],
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"bad remote backend entry: {exc}") from exc
        known = AppConfig.__dataclass_fields__
        unknown = set(raw) - set(known)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values = dict(raw)
        if remotes:
            values["remote_backends"] = tuple(remotes)
    config = AppConfig(**values)

    env = os.environ if env is None else env
    overrides: dict = {}
    for suffix, (field_name, cast) in _ENV_FIELDS.items():
        value = env.get(ENV_PREFIX + suffix)
        if value is not None:
            try:
                overrides[field_name] = cast(value)
            except ValueError as exc:
                raise ConfigError(f"bad value for {ENV_PREFIX}{suffix}: {exc}") from exc
    return replace(config, **overrides) if overrides else config
