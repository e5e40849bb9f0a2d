"""Classify how an ontology models multilingualism, and judge identifiers.

Three family tests (labels / linguistic model / mapping model) run
independently and every hit is reported.  The headline family prefers the
most information-rich mechanism: interlingua and lexical-concept-hub
evidence outranks plain lexicalisation, lexicalisation outranks plain
bridges, bridges outrank labels.  Variants inside a family are decided by
structural markers; when the evidence cannot separate the candidates the
best candidate is reported with needs_human_review set.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Mapping

from .langtags import LanguageTag
from .model import Graph, TermValue
from .signature import AnnotationInventory, AnnotationRow, OntologySignature
from .vocab import (
    DEFAULT_ILI_NAMESPACES,
    DEFAULT_LINGUISTIC_NAMESPACES,
    ONTOLEX_CANONICAL_FORM,
    ONTOLEX_CONCEPT,
    ONTOLEX_DENOTES,
    ONTOLEX_EVOKES,
    ONTOLEX_FORM,
    ONTOLEX_IS_CONCEPT_OF,
    ONTOLEX_IS_DENOTED_BY,
    ONTOLEX_IS_EVOKED_BY,
    ONTOLEX_IS_LEXICALIZED_SENSE_OF,
    ONTOLEX_IS_REFERENCE_OF,
    ONTOLEX_IS_SENSE_OF,
    ONTOLEX_LEXICAL_CONCEPT,
    ONTOLEX_LEXICAL_ENTRY,
    ONTOLEX_LEXICAL_SENSE,
    ONTOLEX_LEXICALIZED_SENSE,
    ONTOLEX_REFERENCE,
    ONTOLEX_SENSE,
    ONTOLEX_WRITTEN_REP,
    OWL_EQUIVALENT_CLASS,
    OWL_SAMEAS,
    RDF_TYPE,
    RDFS_COMMENT,
    RDFS_SUBCLASSOF,
    SKOS_MAPPING_PREDICATES,
)

__all__ = [
    "FAMILY_LABELS",
    "FAMILY_LINGUISTIC",
    "FAMILY_MAPPING",
    "FAMILY_NONE",
    "VARIANTS",
    "DetectorConfig",
    "ApproachEvidence",
    "IdentifierJudgment",
    "classify_identifier",
    "detect_family",
    "detect_variant",
    "detect_approach",
]

FAMILY_LABELS = "labels"
FAMILY_LINGUISTIC = "linguistic-model"
FAMILY_MAPPING = "mapping-model"
FAMILY_NONE = "none"

V_LABELS_LI = "labels-language-independent"
V_LABELS_PLD = "labels-primary-descriptive"
V_LABELS_PLO = "labels-primary-opaque"
V_LING_ENTRIES = "linguistic-entries"
V_LING_SENSES = "linguistic-senses"
V_MAP_TBOX = "mapping-tbox"
V_MAP_ANNOTATION = "mapping-annotation"
V_MAP_ILI = "mapping-ili"
V_MAP_CONCEPTS = "mapping-lexical-concepts"
V_UNDETERMINED = "undetermined"

VARIANTS = (
    V_LABELS_LI, V_LABELS_PLD, V_LABELS_PLO,
    V_LING_ENTRIES, V_LING_SENSES,
    V_MAP_TBOX, V_MAP_ANNOTATION, V_MAP_ILI, V_MAP_CONCEPTS,
)

_SENSE_PREDICATES = frozenset(
    {ONTOLEX_SENSE, ONTOLEX_IS_SENSE_OF, ONTOLEX_REFERENCE, ONTOLEX_IS_REFERENCE_OF}
)
_ENTRY_PREDICATES = frozenset(
    {ONTOLEX_IS_DENOTED_BY, ONTOLEX_DENOTES, ONTOLEX_CANONICAL_FORM, ONTOLEX_WRITTEN_REP}
)
_HUB_PREDICATES = frozenset(
    {
        ONTOLEX_CONCEPT,
        ONTOLEX_IS_CONCEPT_OF,
        ONTOLEX_EVOKES,
        ONTOLEX_IS_EVOKED_BY,
        ONTOLEX_LEXICALIZED_SENSE,
        ONTOLEX_IS_LEXICALIZED_SENSE_OF,
    }
)


@dataclass(frozen=True)
class DetectorConfig:
    linguistic_namespaces: Mapping[str, str] = field(
        default_factory=lambda: dict(DEFAULT_LINGUISTIC_NAMESPACES)
    )
    ili_namespaces: tuple[str, ...] = DEFAULT_ILI_NAMESPACES
    dominance_threshold: float = 0.8  # share of identifiers / completeness share
    tie_epsilon: float = 1.0  # percentage points, for language dominance
    min_confident_entities: int = 3


@dataclass(frozen=True)
class ApproachEvidence:
    family: str
    variant: str = V_UNDETERMINED
    all_families: tuple[str, ...] = ()
    matched_namespaces: frozenset[str] = frozenset()
    matched_predicates: frozenset[str] = frozenset()
    needs_human_review: bool = False
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "variant": self.variant,
            "all_families": list(self.all_families),
            "matched_namespaces": sorted(self.matched_namespaces),
            "matched_predicates": sorted(self.matched_predicates),
            "needs_human_review": self.needs_human_review,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ApproachEvidence":
        return cls(
            family=str(payload.get("family", FAMILY_NONE)),
            variant=str(payload.get("variant", V_UNDETERMINED)),
            all_families=tuple(payload.get("all_families", ())),
            matched_namespaces=frozenset(payload.get("matched_namespaces", ())),
            matched_predicates=frozenset(payload.get("matched_predicates", ())),
            needs_human_review=bool(payload.get("needs_human_review", False)),
            notes=tuple(payload.get("notes", ())),
        )


@dataclass(frozen=True)
class IdentifierJudgment:
    entity: str
    verdict: str  # opaque | descriptive | unknown
    basis: str


def _localname(entity: str) -> str:
    if "#" in entity:
        return entity.rsplit("#", 1)[1]
    trimmed = entity.rstrip("/")
    return trimmed.rsplit("/", 1)[-1]


def _letters_only(text: str) -> str:
    return "".join(c for c in text if c.isalpha()).lower()


def _single_script(letters: str) -> bool:
    scripts = set()
    for c in letters:
        try:
            scripts.add(unicodedata.name(c).split(" ", 1)[0])
        except ValueError:
            return False
    return len(scripts) == 1


def classify_identifier(entity: str, labels: list[AnnotationRow]) -> IdentifierJudgment:
    """Judge whether an entity's local name is descriptive or opaque.

    A local name matching one of the entity's own labels, or a purely
    alphabetic single-script name of three or more letters, reads as
    natural language; digits or one/two-character names read as codes.
    """
    localname = _localname(entity)
    normalized = _letters_only(localname)
    label_texts = {
        _letters_only(r.value.value) for r in labels if r.value.is_literal
    }
    label_texts.discard("")
    if normalized and normalized in label_texts:
        return IdentifierJudgment(entity, "descriptive", "local name matches a label")
    has_digit = any(c.isdigit() for c in localname)
    if not has_digit and len(normalized) >= 3 and _single_script(normalized):
        return IdentifierJudgment(
            entity, "descriptive", "alphabetic single-script local name"
        )
    if has_digit:
        return IdentifierJudgment(entity, "opaque", "local name contains a digit")
    if len(localname) <= 2:
        return IdentifierJudgment(entity, "opaque", "local name of at most two characters")
    return IdentifierJudgment(entity, "unknown", "no rule matched")


def _namespace_of(entity: str) -> str:
    if "#" in entity:
        return entity.rsplit("#", 1)[0] + "#"
    return entity.rsplit("/", 1)[0] + "/"


class _Scan:
    """One pass over the graph collecting every family signal."""

    def __init__(self, g: Graph, sig: OntologySignature, inv: AnnotationInventory,
                 config: DetectorConfig):
        self.config = config
        self.linguistic_namespaces: set[str] = set()
        self.linguistic_predicates: set[str] = set()
        self.sameas: list[tuple[TermValue, TermValue]] = []
        self.cross_ns_alignments: set[str] = set()
        self.skos_mappings: set[str] = set()
        self.hub_predicates: set[str] = set()
        self.sense_markers: set[str] = set()
        self.entry_markers: set[str] = set()
        self.ili_links = 0

        watched = tuple(config.linguistic_namespaces.values())
        entities = sig.entities
        for t in g.triples:
            p = t.predicate.value
            for ns in watched:
                if p.startswith(ns):
                    self.linguistic_namespaces.add(ns)
                    self.linguistic_predicates.add(p)
                if t.object.is_iri and t.object.value.startswith(ns):
                    self.linguistic_namespaces.add(ns)
            if p in _HUB_PREDICATES:
                self.hub_predicates.add(p)
            elif p in _SENSE_PREDICATES:
                self.sense_markers.add(p)
            elif p in _ENTRY_PREDICATES:
                self.entry_markers.add(p)
            elif p == RDF_TYPE and t.object.is_iri:
                o = t.object.value
                if o == ONTOLEX_LEXICAL_CONCEPT:
                    self.hub_predicates.add(o)
                elif o == ONTOLEX_LEXICAL_SENSE:
                    self.sense_markers.add(o)
                elif o in (ONTOLEX_LEXICAL_ENTRY, ONTOLEX_FORM):
                    self.entry_markers.add(o)
            elif p == OWL_SAMEAS:
                self.sameas.append((t.subject, t.object))
                if t.object.is_iri and t.object.value.startswith(config.ili_namespaces):
                    self.ili_links += 1
            elif p in SKOS_MAPPING_PREDICATES:
                self.skos_mappings.add(p)
            elif p in (OWL_EQUIVALENT_CLASS, RDFS_SUBCLASSOF):
                if (
                    t.subject.is_iri
                    and t.object.is_iri
                    and t.subject.value in entities
                    and t.object.value in entities
                    and _namespace_of(t.subject.value) != _namespace_of(t.object.value)
                ):
                    self.cross_ns_alignments.add(p)

        self.tagged_label_rows = [
            r for r in inv.rows
            if r.value.is_literal and r.language is not None and not r.language.is_untagged
        ]
        self.annotation_iris = {r.value.value for r in inv.iri_rows()}

    @property
    def labels_hit(self) -> bool:
        return bool(self.tagged_label_rows)

    @property
    def linguistic_hit(self) -> bool:
        return bool(self.linguistic_namespaces)

    @property
    def mapping_hit(self) -> bool:
        return bool(
            self.sameas or self.cross_ns_alignments or self.skos_mappings
            or self.hub_predicates
        )

    @property
    def hub_or_ili(self) -> bool:
        return bool(self.hub_predicates) or self.ili_links > 0

    def annotation_value_sameas(self) -> bool:
        return any(
            s.is_iri and o.is_iri
            and s.value in self.annotation_iris and o.value in self.annotation_iris
            for s, o in self.sameas
        )

    def mapping_predicates(self) -> frozenset[str]:
        preds: set[str] = set(self.cross_ns_alignments) | set(self.skos_mappings)
        preds |= self.hub_predicates & _HUB_PREDICATES
        if self.sameas:
            preds.add(OWL_SAMEAS)
        return frozenset(preds)


def detect_family(
    g: Graph,
    sig: OntologySignature,
    inv: AnnotationInventory,
    config: DetectorConfig | None = None,
) -> ApproachEvidence:
    """Run the three family tests; the variant stays undetermined here."""
    config = config or DetectorConfig()
    scan = _Scan(g, sig, inv, config)

    all_families = []
    if scan.labels_hit:
        all_families.append(FAMILY_LABELS)
    if scan.linguistic_hit:
        all_families.append(FAMILY_LINGUISTIC)
    if scan.mapping_hit:
        all_families.append(FAMILY_MAPPING)

    notes: list[str] = []
    if scan.mapping_hit and scan.hub_or_ili:
        family = FAMILY_MAPPING
        if scan.linguistic_hit:
            notes.append(
                "lexicalisation machinery present but subordinate to the "
                "interlingua/lexical-concept bridge"
            )
    elif scan.linguistic_hit:
        family = FAMILY_LINGUISTIC
    elif scan.mapping_hit:
        family = FAMILY_MAPPING
    else:
        family = FAMILY_LABELS if scan.labels_hit else FAMILY_NONE

    matched_predicates: set[str] = set()
    matched_namespaces: set[str] = set()
    if family == FAMILY_LINGUISTIC or scan.linguistic_hit:
        matched_namespaces |= scan.linguistic_namespaces
    if family == FAMILY_MAPPING or scan.mapping_hit:
        matched_predicates |= scan.mapping_predicates()
    if scan.labels_hit:
        matched_predicates |= {r.property for r in scan.tagged_label_rows}

    return ApproachEvidence(
        family=family,
        variant=V_UNDETERMINED,
        all_families=tuple(all_families),
        matched_namespaces=frozenset(matched_namespaces),
        matched_predicates=frozenset(matched_predicates),
        needs_human_review=False,
        notes=tuple(notes),
    )


def _labels_variant(
    sig: OntologySignature,
    inv: AnnotationInventory,
    config: DetectorConfig,
    evidence: ApproachEvidence,
) -> ApproachEvidence:
    entities = sorted(sig.entities)
    cov = len(entities)
    notes = list(evidence.notes)
    if cov == 0:
        return _finish(evidence, V_UNDETERMINED, True, notes + ["empty signature"])

    judgments = [classify_identifier(e, inv.by_entity(e)) for e in entities]
    opaque = sum(1 for j in judgments if j.verdict == "opaque")
    descriptive = sum(1 for j in judgments if j.verdict == "descriptive")
    opaque_ratio = opaque / cov
    descriptive_ratio = descriptive / cov

    per_lang: dict[LanguageTag, set[str]] = {}
    labeled_any: set[str] = set()
    for row in inv.rows:
        if not row.value.is_literal or row.entity not in sig.entities:
            continue
        if row.property == RDFS_COMMENT:
            continue
        labeled_any.add(row.entity)
        if row.language is not None and not row.language.is_untagged:
            per_lang.setdefault(row.language, set()).add(row.entity)
    lcom = {tag: 100.0 * len(m) / cov for tag, m in per_lang.items()}
    n_langs = len(lcom)
    top = max(lcom.values()) if lcom else 0.0
    leaders = [t for t, p in lcom.items() if p >= top - config.tie_epsilon]
    dominant = bool(lcom) and len(leaders) == 1 and top >= config.dominance_threshold * 100.0
    all_labeled = len(labeled_any) == cov
    small = cov < config.min_confident_entities
    if small:
        notes.append("too few entities to separate the label variants reliably")

    threshold = config.dominance_threshold
    if opaque_ratio >= threshold:
        if n_langs >= 2 and dominant:
            return _finish(evidence, V_LABELS_PLO, small, notes)
        if all_labeled:
            review = small or n_langs < 2
            if n_langs < 2:
                notes.append("a single labelling language cannot rule out a primary-language reading")
            return _finish(evidence, V_LABELS_LI, review, notes)
        if dominant:
            notes.append("unlabelled entities alongside a dominant language")
            return _finish(evidence, V_LABELS_PLO, True, notes)
        notes.append("opaque identifiers but the mandatory-label rule fails")
        return _finish(evidence, V_LABELS_LI, True, notes)
    if descriptive_ratio >= threshold:
        review = small or not dominant
        if not dominant and n_langs >= 2:
            notes.append("no single dominant language despite descriptive identifiers")
        return _finish(evidence, V_LABELS_PLD, review, notes)
    notes.append(
        f"mixed identifier styles (opaque {opaque_ratio:.0%}, descriptive {descriptive_ratio:.0%})"
    )
    guess = V_LABELS_PLD if descriptive >= opaque else V_LABELS_PLO
    return _finish(evidence, guess, True, notes)


def _finish(
    evidence: ApproachEvidence, variant: str, review: bool, notes: list[str]
) -> ApproachEvidence:
    return ApproachEvidence(
        family=evidence.family,
        variant=variant,
        all_families=evidence.all_families,
        matched_namespaces=evidence.matched_namespaces,
        matched_predicates=evidence.matched_predicates,
        needs_human_review=review,
        notes=tuple(dict.fromkeys(notes)),
    )


def detect_variant(
    g: Graph,
    sig: OntologySignature,
    inv: AnnotationInventory,
    family_evidence: ApproachEvidence,
    config: DetectorConfig | None = None,
) -> ApproachEvidence:
    """Refine a detected family into one of the nine variants."""
    config = config or DetectorConfig()
    family = family_evidence.family
    if family == FAMILY_NONE:
        return _finish(family_evidence, V_UNDETERMINED, False, list(family_evidence.notes))
    if family == FAMILY_LABELS:
        return _labels_variant(sig, inv, config, family_evidence)

    scan = _Scan(g, sig, inv, config)
    notes = list(family_evidence.notes)
    if family == FAMILY_LINGUISTIC:
        if scan.sense_markers:
            return _finish(family_evidence, V_LING_SENSES, False, notes)
        if scan.entry_markers:
            return _finish(family_evidence, V_LING_ENTRIES, False, notes)
        notes.append("linguistic namespace usage without entry or sense structure")
        return _finish(family_evidence, V_LING_ENTRIES, True, notes)
    if family == FAMILY_MAPPING:
        if scan.hub_predicates:
            return _finish(family_evidence, V_MAP_CONCEPTS, False, notes)
        if scan.ili_links:
            return _finish(family_evidence, V_MAP_ILI, False, notes)
        if scan.annotation_value_sameas():
            return _finish(family_evidence, V_MAP_ANNOTATION, False, notes)
        if scan.cross_ns_alignments or scan.skos_mappings:
            return _finish(family_evidence, V_MAP_TBOX, False, notes)
        notes.append("owl:sameAs links without a recognizable bridge pattern")
        return _finish(family_evidence, V_MAP_TBOX, True, notes)
    raise ValueError(f"unknown family {family!r}")


def detect_approach(
    g: Graph,
    sig: OntologySignature,
    inv: AnnotationInventory,
    config: DetectorConfig | None = None,
) -> ApproachEvidence:
    """Family detection followed by variant refinement."""
    config = config or DetectorConfig()
    evidence = detect_family(g, sig, inv, config)
    return detect_variant(g, sig, inv, evidence, config)
