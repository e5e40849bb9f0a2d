"""Run configuration: defaults, config file, environment, flag overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .detector import DetectorConfig
from .errors import ConfigError
from .vocab import (
    DEFAULT_ILI_NAMESPACES,
    DEFAULT_LABEL_PROPERTIES,
    DEFAULT_LINGUISTIC_NAMESPACES,
    RDFS_COMMENT,
    RDFS_LABEL,
    SKOS_ALTLABEL,
    SKOS_PREFLABEL,
)

__all__ = ["RunConfig", "load_config_file", "load_watchlist", "parse_label_properties",
           "ENV_APIKEY", "ENV_CACHE_DIR"]

ENV_APIKEY = "ONTOAUDIT_BIOPORTAL_APIKEY"
ENV_CACHE_DIR = "ONTOAUDIT_CACHE_DIR"

_LABEL_SHORTHAND = {
    "rdfs:label": RDFS_LABEL,
    "rdfs:comment": RDFS_COMMENT,
    "skos:prefLabel": SKOS_PREFLABEL,
    "skos:altLabel": SKOS_ALTLABEL,
}


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path = Path("ontoaudit-cache")
    offline: bool = False
    threshold: float = 5.0
    label_properties: tuple[str, ...] = DEFAULT_LABEL_PROPERTIES
    linguistic_namespaces: dict[str, str] = field(
        default_factory=lambda: dict(DEFAULT_LINGUISTIC_NAMESPACES)
    )
    tie_epsilon: float = 1.0
    dominance_threshold: float = 0.8
    concurrency: int = 4
    strict_parsing: bool = True
    per_host: int = 4
    politeness_delay: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 100.0:
            raise ConfigError("threshold must be within [0, 100]")
        if self.concurrency < 1:
            raise ConfigError("concurrency must be at least 1")

    def detector(self) -> DetectorConfig:
        return DetectorConfig(
            linguistic_namespaces=self.linguistic_namespaces,
            ili_namespaces=DEFAULT_ILI_NAMESPACES,
            dominance_threshold=self.dominance_threshold,
            tie_epsilon=self.tie_epsilon,
        )


def parse_label_properties(spec: str) -> tuple[str, ...]:
    """Comma-separated label property IRIs; common CURIE spellings accepted."""
    properties = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        properties.append(_LABEL_SHORTHAND.get(chunk, chunk))
    if not properties:
        raise ConfigError("at least one label property is required")
    return tuple(properties)


def load_watchlist(path: str | Path) -> dict[str, str]:
    """Namespace watchlist file: one `prefix IRI` or `prefix=IRI` per line."""
    namespaces: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            prefix, _, ns_iri = line.partition("=")
        else:
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ConfigError(f"{path}:{line_no}: expected 'prefix IRI'")
            prefix, ns_iri = parts
        prefix = prefix.strip()
        ns_iri = ns_iri.strip()
        if not prefix or not ns_iri:
            raise ConfigError(f"{path}:{line_no}: empty prefix or namespace")
        namespaces[prefix] = ns_iri
    if not namespaces:
        raise ConfigError(f"watchlist {path} declares no namespaces")
    return namespaces


def load_config_file(path: str | Path) -> dict[str, str]:
    """key=value configuration, '#' comments; flags override these values."""
    values: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def build_config(
    *,
    config_file: str | None = None,
    cache_dir: str | None = None,
    offline: bool | None = None,
    threshold: float | None = None,
    label_properties: str | None = None,
    watchlist: str | None = None,
    tie_epsilon: float | None = None,
    concurrency: int | None = None,
    strict_parsing: bool | None = None,
    dominance_threshold: float | None = None,
) -> RunConfig:
    """Defaults <- config file <- environment <- flags, later wins."""
    file_values = load_config_file(config_file) if config_file else {}

    def pick(flag, key: str, cast):
        if flag is not None:
            return cast(flag)
        if key in file_values:
            raw = file_values[key]
            if cast is bool:
                return raw.lower() in ("1", "true", "yes", "on")
            return cast(raw)
        return None

    kwargs: dict = {}
    chosen_cache = pick(cache_dir, "cache_dir", str)
    if chosen_cache is None:
        chosen_cache = os.environ.get(ENV_CACHE_DIR)
    if chosen_cache is not None:
        kwargs["cache_dir"] = Path(chosen_cache)
    for flag, key, cast, name in (
        (offline, "offline", bool, "offline"),
        (threshold, "threshold", float, "threshold"),
        (tie_epsilon, "tie_epsilon", float, "tie_epsilon"),
        (concurrency, "concurrency", int, "concurrency"),
        (strict_parsing, "strict_parsing", bool, "strict_parsing"),
        (dominance_threshold, "dominance_threshold", float, "dominance_threshold"),
        (None, "per_host", int, "per_host"),
        (None, "politeness_delay", float, "politeness_delay"),
    ):
        value = pick(flag, key, cast)
        if value is not None:
            kwargs[name] = value
    labels = pick(label_properties, "label_properties", str)
    if labels is not None:
        kwargs["label_properties"] = parse_label_properties(labels)
    watch = pick(watchlist, "watchlist", str)
    config = RunConfig(**kwargs)
    if watch is not None:
        config = replace(config, linguistic_namespaces=load_watchlist(watch))
    return config
