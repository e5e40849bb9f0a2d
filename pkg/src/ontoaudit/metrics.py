"""Coverage, language-specific completeness, primary language, aggregates.

Completeness counts each covered entity at most once per language, keeping
every percentage inside [0, 100] even when an entity has several labels in
the same language.  Untagged literals are tracked under a reserved marker
and never influence multilinguality or primary-language decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Sequence

from .detector import ApproachEvidence
from .errors import DegenerateCoverageError, DegenerateProfileError, EmptyInputError
from .langtags import UNTAGGED, UNTAGGED_KEY, LanguageTag, parse_tag
from .signature import AnnotationInventory, OntologySignature
from .vocab import RDFS_COMMENT

__all__ = [
    "CompletenessProfile",
    "AuditResult",
    "DatasetSummary",
    "coverage",
    "completeness_profile",
    "language_completeness",
    "primary_languages",
    "classify_multilingual",
    "required_mapping_count",
    "aggregate",
    "round_half_up",
]

DEFAULT_TIE_EPSILON = 1.0  # percentage points
DEFAULT_THRESHOLDS = (0.0, 5.0)


def round_half_up(value: float, ndigits: int) -> float:
    """Round with ties away from zero, matching the published tables."""
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class CompletenessProfile:
    cov: int
    per_language: dict[LanguageTag, float]  # raw percentages, unrounded
    labeled_entities_per_language: dict[LanguageTag, int]
    untagged_percentage: float = 0.0
    untagged_entities: int = 0

    @property
    def degenerate(self) -> bool:
        return self.cov == 0

    def real_languages(self) -> list[LanguageTag]:
        return [t for t in self.per_language if not t.is_untagged]

    def ill_formed_languages(self) -> list[LanguageTag]:
        return [t for t in self.per_language if not t.well_formed and not t.is_untagged]


def coverage(sig: OntologySignature) -> int:
    """|classes| + |object properties| + |data properties|, pre-import."""
    return sig.coverage()


def completeness_profile(
    inv: AnnotationInventory,
    sig: OntologySignature,
    tie_epsilon: float = DEFAULT_TIE_EPSILON,
) -> CompletenessProfile:
    cov = sig.coverage()
    entities = sig.entities
    seen: dict[LanguageTag, set[str]] = {}
    for row in inv.rows:
        if row.language is None or not row.value.is_literal:
            continue
        if row.property == RDFS_COMMENT:
            continue  # comments may be inventoried but are never completeness
        if row.entity not in entities:
            continue
        seen.setdefault(row.language, set()).add(row.entity)
    if cov == 0:
        return CompletenessProfile(0, {}, {})
    counts = {tag: len(members) for tag, members in seen.items()}
    untagged_count = counts.pop(UNTAGGED, 0)
    per_language = {tag: 100.0 * n / cov for tag, n in counts.items()}
    return CompletenessProfile(
        cov=cov,
        per_language=per_language,
        labeled_entities_per_language=counts,
        untagged_percentage=100.0 * untagged_count / cov,
        untagged_entities=untagged_count,
    )


def language_completeness(
    inv: AnnotationInventory, sig: OntologySignature, lang: LanguageTag | str
) -> float:
    """Percentage of covered entities with at least one literal label in lang."""
    cov = sig.coverage()
    if cov == 0:
        raise DegenerateCoverageError("completeness is undefined for zero coverage")
    if isinstance(lang, str):
        lang = parse_tag(lang)
    entities = sig.entities
    labeled = {
        row.entity
        for row in inv.rows
        if row.language == lang and row.value.is_literal
        and row.property != RDFS_COMMENT and row.entity in entities
    }
    return 100.0 * len(labeled) / cov


def primary_languages(
    profile: CompletenessProfile, tie_epsilon: float = DEFAULT_TIE_EPSILON
) -> frozenset[LanguageTag]:
    """Every language whose completeness is within tie_epsilon of the maximum."""
    if profile.degenerate:
        raise DegenerateProfileError("no primary language for zero coverage")
    real = {t: p for t, p in profile.per_language.items() if not t.is_untagged}
    if not real:
        raise DegenerateProfileError("no language-tagged labels present")
    top = max(real.values())
    return frozenset(t for t, p in real.items() if p >= top - tie_epsilon)


def classify_multilingual(profile: CompletenessProfile, threshold: float) -> bool:
    """True iff at least two languages exceed the completeness threshold."""
    qualifying = [
        t for t, p in profile.per_language.items() if not t.is_untagged and p > threshold
    ]
    return len(qualifying) >= 2


def required_mapping_count(n: int) -> int:
    """Pairwise correspondences needed to align n classes: n(n-1)/2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return n * (n - 1) // 2


@dataclass(frozen=True)
class AuditResult:
    ontology_id: str
    profile: CompletenessProfile
    primary_languages: frozenset[LanguageTag]
    other_languages: frozenset[LanguageTag]
    approach: ApproachEvidence
    multilingual_at: dict[float, bool]
    dataset: str = ""
    error: str | None = None

    @property
    def needs_review(self) -> bool:
        return self.approach.needs_human_review or bool(self.profile.ill_formed_languages())

    def multilingual_at_threshold(self, threshold: float) -> bool:
        if threshold in self.multilingual_at:
            return self.multilingual_at[threshold]
        return classify_multilingual(self.profile, threshold)

    def to_dict(self) -> dict:
        prof = self.profile
        return {
            "id": self.ontology_id,
            "dataset": self.dataset,
            "cov": prof.cov,
            "lcom": {t.normalized: p for t, p in sorted(prof.per_language.items(), key=lambda kv: kv[0].normalized)},
            "labeled_entities": {
                t.normalized: n
                for t, n in sorted(prof.labeled_entities_per_language.items(), key=lambda kv: kv[0].normalized)
            },
            "untagged_percentage": prof.untagged_percentage,
            "untagged_entities": prof.untagged_entities,
            "primary_languages": sorted(t.normalized for t in self.primary_languages),
            "other_languages": sorted(t.normalized for t in self.other_languages),
            "approach": self.approach.to_dict(),
            "multilingual_at": {f"{t:g}": v for t, v in sorted(self.multilingual_at.items())},
            "needs_review": self.needs_review,
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "AuditResult":
        lcom = {parse_tag(k): float(v) for k, v in payload.get("lcom", {}).items()}
        labeled = {parse_tag(k): int(v) for k, v in payload.get("labeled_entities", {}).items()}
        profile = CompletenessProfile(
            cov=int(payload["cov"]),
            per_language=lcom,
            labeled_entities_per_language=labeled,
            untagged_percentage=float(payload.get("untagged_percentage", 0.0)),
            untagged_entities=int(payload.get("untagged_entities", 0)),
        )
        return cls(
            ontology_id=str(payload["id"]),
            profile=profile,
            primary_languages=frozenset(parse_tag(t) for t in payload.get("primary_languages", [])),
            other_languages=frozenset(parse_tag(t) for t in payload.get("other_languages", [])),
            approach=ApproachEvidence.from_dict(payload.get("approach", {})),
            multilingual_at={float(k): bool(v) for k, v in payload.get("multilingual_at", {}).items()},
            dataset=str(payload.get("dataset", "")),
        )


@dataclass(frozen=True)
class DatasetSummary:
    dataset: str
    threshold: float
    total_results: int
    count_multilingual: int
    total_cov: int
    covs: tuple[int, ...]  # multilingual subset, sorted
    language_histogram: dict[str, int]
    languages_per_ontology: dict[int, int]

    @property
    def percent_multilingual(self) -> float:
        if self.total_results == 0:
            return 0.0
        return 100.0 * self.count_multilingual / self.total_results

    @property
    def mean_cov(self) -> float | None:
        if self.count_multilingual == 0:
            return None
        return self.total_cov / self.count_multilingual

    @property
    def median_cov(self) -> float | None:
        if not self.covs:
            return None
        return _median(self.covs)


def _median(values: Sequence[int]) -> float:
    n = len(values)
    mid = n // 2
    if n % 2 == 1:
        return float(values[mid])
    return (values[mid - 1] + values[mid]) / 2.0


def aggregate(
    results: Iterable[AuditResult],
    threshold: float,
    dataset: str = "",
) -> DatasetSummary:
    """Dataset-level statistics over the multilingual subset at a threshold."""
    results = list(results)
    if not results:
        raise EmptyInputError("aggregate requires at least one result")
    multilingual = [r for r in results if classify_multilingual(r.profile, threshold)]
    covs = tuple(sorted(r.profile.cov for r in multilingual))
    language_histogram: dict[str, int] = {}
    languages_per_ontology: dict[int, int] = {}
    for r in multilingual:
        qualifying = [
            t for t, p in r.profile.per_language.items()
            if not t.is_untagged and p > threshold
        ]
        for t in qualifying:
            language_histogram[t.normalized] = language_histogram.get(t.normalized, 0) + 1
        k = len(qualifying)
        languages_per_ontology[k] = languages_per_ontology.get(k, 0) + 1
    return DatasetSummary(
        dataset=dataset,
        threshold=threshold,
        total_results=len(results),
        count_multilingual=len(multilingual),
        total_cov=sum(covs),
        covs=covs,
        language_histogram=dict(sorted(language_histogram.items())),
        languages_per_ontology=dict(sorted(languages_per_ontology.items())),
    )
