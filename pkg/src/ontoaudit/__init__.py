"""ontoaudit: audit OWL/RDF ontologies for multilingualism.

Parses RDF documents, extracts class/property signatures, detects the
multilingual modelling approach, computes coverage and per-language
completeness, harvests BioPortal and LOV, generates reference corpora for
all nine modelling variants, and renders reproducible reports.
"""

from .audit import AuditConfig, audit_corpus, audit_graph, audit_path
from .detector import (
    ApproachEvidence,
    DetectorConfig,
    IdentifierJudgment,
    classify_identifier,
    detect_approach,
    detect_family,
    detect_variant,
)
from .formats import detect_format, parse_document, scan_stream
from .generator import GeneratedCorpus, GenerationSpec, emit_ntriples, generate
from .langtags import UNTAGGED, LanguageTag, parse_tag, same_language
from .metrics import (
    AuditResult,
    CompletenessProfile,
    aggregate,
    classify_multilingual,
    coverage,
    language_completeness,
    primary_languages,
    required_mapping_count,
)
from .model import Graph, TermValue, Triple, bnode, iri, literal, merge_graphs
from .signature import (
    AnnotationInventory,
    OntologySignature,
    collect_annotations,
    extract_signature,
    local_namespaces,
)

__version__ = "0.1.0"

__all__ = [
    "AuditConfig",
    "AuditResult",
    "AnnotationInventory",
    "ApproachEvidence",
    "CompletenessProfile",
    "DetectorConfig",
    "GeneratedCorpus",
    "GenerationSpec",
    "Graph",
    "IdentifierJudgment",
    "LanguageTag",
    "OntologySignature",
    "TermValue",
    "Triple",
    "UNTAGGED",
    "aggregate",
    "audit_corpus",
    "audit_graph",
    "audit_path",
    "bnode",
    "classify_identifier",
    "classify_multilingual",
    "collect_annotations",
    "coverage",
    "detect_approach",
    "detect_family",
    "detect_format",
    "detect_variant",
    "emit_ntriples",
    "extract_signature",
    "generate",
    "iri",
    "language_completeness",
    "literal",
    "local_namespaces",
    "merge_graphs",
    "parse_document",
    "parse_tag",
    "primary_languages",
    "required_mapping_count",
    "same_language",
    "scan_stream",
]
