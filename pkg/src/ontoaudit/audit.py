"""End-to-end audit of a document or corpus: parse, extract, detect, measure."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .detector import DetectorConfig, detect_approach
from .errors import DegenerateProfileError
from .formats import DEFAULT_MAX_DOCUMENT_BYTES, detect_format, parse_document
from .generator import MANIFEST_FILENAME, load_manifest
from .metrics import (
    AuditResult,
    DEFAULT_THRESHOLDS,
    DEFAULT_TIE_EPSILON,
    classify_multilingual,
    completeness_profile,
    primary_languages,
)
from .model import Graph, merge_graphs
from .signature import collect_annotations, extract_signature
from .vocab import DEFAULT_LABEL_PROPERTIES

log = logging.getLogger(__name__)

__all__ = ["AuditConfig", "audit_graph", "audit_corpus", "audit_path"]


@dataclass(frozen=True)
class AuditConfig:
    label_properties: tuple[str, ...] = DEFAULT_LABEL_PROPERTIES
    tie_epsilon: float = DEFAULT_TIE_EPSILON
    thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    max_document_bytes: int = DEFAULT_MAX_DOCUMENT_BYTES

    def with_detector(self) -> DetectorConfig:
        return DetectorConfig(
            linguistic_namespaces=self.detector.linguistic_namespaces,
            ili_namespaces=self.detector.ili_namespaces,
            dominance_threshold=self.detector.dominance_threshold,
            tie_epsilon=self.tie_epsilon,
            min_confident_entities=self.detector.min_confident_entities,
        )


def audit_graph(
    g: Graph, ontology_id: str, config: AuditConfig | None = None, dataset: str = ""
) -> AuditResult:
    config = config or AuditConfig()
    sig = extract_signature(g)
    inv = collect_annotations(g, sig, config.label_properties)
    approach = detect_approach(g, sig, inv, config.with_detector())
    profile = completeness_profile(inv, sig)
    try:
        primary = primary_languages(profile, config.tie_epsilon)
    except DegenerateProfileError:
        primary = frozenset()
    others = frozenset(
        t for t in profile.per_language if not t.is_untagged and t not in primary
    )
    return AuditResult(
        ontology_id=ontology_id,
        profile=profile,
        primary_languages=primary,
        other_languages=others,
        approach=approach,
        multilingual_at={t: classify_multilingual(profile, t) for t in config.thresholds},
        dataset=dataset,
    )


def audit_corpus(
    documents: list[tuple[str, Graph]],
    corpus_id: str,
    config: AuditConfig | None = None,
    dataset: str = "",
) -> AuditResult:
    """Audit several documents as one unit (ontology plus lexicons/bridges)."""
    merged = merge_graphs(documents)
    return audit_graph(merged, corpus_id, config, dataset)


def _parse_file(path: Path, config: AuditConfig) -> Graph:
    data = path.read_bytes()
    fmt = detect_format(filename=path.name, head=data[:512])
    return parse_document(data, fmt, max_bytes=config.max_document_bytes)


def audit_path(
    path: str | Path, config: AuditConfig | None = None, dataset: str = ""
) -> AuditResult:
    """Audit a single file, or a corpus directory carrying a manifest."""
    config = config or AuditConfig()
    path = Path(path)
    if path.is_dir():
        manifest = load_manifest(path)
        documents = []
        for entry in manifest["documents"]:
            doc_path = path / entry.get("path", entry["name"] + ".nt")
            documents.append((entry["name"], _parse_file(doc_path, config)))
        return audit_corpus(documents, manifest["name"], config, dataset)
    graph = _parse_file(path, config)
    return audit_graph(graph, path.stem, config, dataset)
