"""Deterministic reference corpora for the nine multilingual modelling variants.

Each generated corpus ships a manifest with its expected audit outcome
(coverage, per-language completeness, family, variant), which makes the
corpora usable as oracles: auditing the emitted files must reproduce the
manifest exactly.  Generation is a pure function of the spec; equal seeds
yield byte-identical N-Triples output.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import detector
from .errors import InvalidSpecError
from .langtags import parse_tag
from .model import Graph, TermValue, Triple, iri, literal
from .ntriples import serialize_graph
from .vocab import (
    DCTERMS_NS,
    ONTOLEX_CANONICAL_FORM,
    ONTOLEX_CONCEPT,
    ONTOLEX_FORM,
    ONTOLEX_IS_DENOTED_BY,
    ONTOLEX_IS_EVOKED_BY,
    ONTOLEX_IS_SENSE_OF,
    ONTOLEX_LEXICAL_CONCEPT,
    ONTOLEX_LEXICAL_ENTRY,
    ONTOLEX_LEXICAL_SENSE,
    ONTOLEX_LEXICALIZED_SENSE,
    ONTOLEX_REFERENCE,
    ONTOLEX_SENSE,
    ONTOLEX_WRITTEN_REP,
    OWL_DATATYPE_PROPERTY,
    OWL_EQUIVALENT_CLASS,
    OWL_OBJECT_PROPERTY,
    OWL_SAMEAS,
    OWL_THING,
    RDF_TYPE,
    RDFS_LABEL,
    RDFS_SUBCLASSOF,
    SKOS_ALTLABEL,
    SKOS_PREFLABEL,
    SYNTHETIC_ILI_NS,
)

__all__ = [
    "GenerationSpec",
    "GeneratedCorpus",
    "generate",
    "emit_ntriples",
    "load_manifest",
    "validate_sense_cardinality",
    "validate_preflabel_uniqueness",
    "inflection_showcase",
    "MANIFEST_FILENAME",
]

MANIFEST_FILENAME = "manifest.json"

LANGUAGE_IRI_BASE = "http://id.example.org/language/"

# Fixed word list for descriptive identifiers; no external dictionaries.
_WORDS = (
    "river", "house", "person", "mountain", "harbor", "garden", "bridge",
    "forest", "animal", "village", "window", "stone", "cloud", "meadow",
    "island", "lantern", "market", "orchard", "valley", "thunder", "bottle",
    "mirror", "anchor", "basket", "candle", "desert", "engine", "feather",
    "glacier", "hammer", "insect", "journey", "kettle", "ladder", "machine",
    "needle", "ocean", "pepper", "quarter", "ribbon", "saddle", "temple",
    "vessel", "wagon", "yarrow", "zephyr", "barley", "cinder", "drum",
    "ember", "fable", "grove", "harvest", "ivory", "jasper", "kelp",
    "linen", "marble", "nectar", "opal", "pine", "quartz", "reed", "slate",
)

_LABEL_FAMILY = {
    detector.V_LABELS_LI: detector.FAMILY_LABELS,
    detector.V_LABELS_PLD: detector.FAMILY_LABELS,
    detector.V_LABELS_PLO: detector.FAMILY_LABELS,
    detector.V_LING_ENTRIES: detector.FAMILY_LINGUISTIC,
    detector.V_LING_SENSES: detector.FAMILY_LINGUISTIC,
    detector.V_MAP_TBOX: detector.FAMILY_MAPPING,
    detector.V_MAP_ANNOTATION: detector.FAMILY_MAPPING,
    detector.V_MAP_ILI: detector.FAMILY_MAPPING,
    detector.V_MAP_CONCEPTS: detector.FAMILY_MAPPING,
}


@dataclass(frozen=True)
class GenerationSpec:
    variant: str
    languages: tuple[str, ...]
    class_count: int = 1
    object_property_count: int = 0
    data_property_count: int = 0
    completeness: Mapping[str, float] = field(default_factory=dict)
    seed: int = 0
    base_iri: str = "http://example.org/onto/"
    name: str = ""
    nary_bridge: bool = False

    def validate(self) -> None:
        if self.variant not in _LABEL_FAMILY:
            raise InvalidSpecError(
                f"unknown variant {self.variant!r}; expected one of {sorted(_LABEL_FAMILY)}"
            )
        if not self.languages:
            raise InvalidSpecError("languages must be non-empty")
        for lang in self.languages:
            if not parse_tag(lang).well_formed:
                raise InvalidSpecError(f"ill-formed language tag {lang!r}")
        if min(self.class_count, self.object_property_count, self.data_property_count) < 0:
            raise InvalidSpecError("entity counts must be non-negative")
        unknown = set(self.completeness) - set(self.languages)
        if unknown:
            raise InvalidSpecError(f"completeness keys outside languages: {sorted(unknown)}")
        for lang, frac in self.completeness.items():
            if not 0.0 <= float(frac) <= 1.0:
                raise InvalidSpecError(f"completeness for {lang!r} outside [0, 1]")
        if not self.base_iri.endswith(("/", "#")):
            raise InvalidSpecError("base IRI must end with '/' or '#'")

    @property
    def corpus_name(self) -> str:
        return self.name or self.variant

    def fraction(self, lang: str) -> float:
        return float(self.completeness.get(lang, 1.0))

    @classmethod
    def from_dict(cls, payload: Mapping) -> "GenerationSpec":
        try:
            spec = cls(
                variant=str(payload["variant"]),
                languages=tuple(payload["languages"]),
                class_count=int(payload.get("class_count", 1)),
                object_property_count=int(payload.get("object_property_count", 0)),
                data_property_count=int(payload.get("data_property_count", 0)),
                completeness={str(k): float(v) for k, v in payload.get("completeness", {}).items()},
                seed=int(payload.get("seed", 0)),
                base_iri=str(payload.get("base_iri", "http://example.org/onto/")),
                name=str(payload.get("name", "")),
                nary_bridge=bool(payload.get("nary_bridge", False)),
            )
        except KeyError as exc:
            raise InvalidSpecError(f"spec is missing the field {exc.args[0]!r}") from exc
        spec.validate()
        return spec


@dataclass(frozen=True)
class GeneratedCorpus:
    name: str
    ontology_documents: tuple[tuple[str, Graph], ...]
    lexicon_documents: tuple[tuple[str, Graph], ...]
    manifest: dict

    @property
    def documents(self) -> tuple[tuple[str, Graph], ...]:
        return self.ontology_documents + self.lexicon_documents


def _ceil_count(fraction: float, total: int) -> int:
    if fraction <= 0.0 or total == 0:
        return 0
    return min(total, math.ceil(fraction * total - 1e-9))


@dataclass
class _Entity:
    iri_value: str
    phrase: str  # natural-language phrase used for labels and written forms
    kind: str  # class | op | dp

    @property
    def term(self) -> TermValue:
        return iri(self.iri_value)

    @property
    def local(self) -> str:
        return self.iri_value.rsplit("/", 1)[-1].rsplit("#", 1)[-1]


class _Namer:
    """Unique deterministic names; the word inventory composes without bound."""

    def __init__(self, rng: random.Random, descriptive: bool):
        self.rng = rng
        self.descriptive = descriptive
        words = list(_WORDS)
        self.rng.shuffle(words)
        self._words = words
        self._next = 0

    def _phrase_words(self, k: int) -> list[str]:
        n = len(self._words)
        digits = [k % n]
        k //= n
        while k:
            digits.append(k % n)
            k //= n
        return [self._words[d] for d in digits]

    def next_entity(self, ns: str, kind: str, index: int) -> _Entity:
        words = self._phrase_words(self._next)
        self._next += 1
        phrase = " ".join(words)
        if self.descriptive:
            local = "".join(w.capitalize() for w in words)
        else:
            letters = self.rng.choice("BCDFGHJKLMNPQRSTVWXZ") + self.rng.choice(
                "bcdfghjklmnpqrstvwxz"
            )
            local = f"{kind[0].upper()}{letters}{index:04d}"
        return _Entity(iri_value=ns + local, phrase=phrase, kind=kind)


def _make_entities(spec: GenerationSpec, ns: str, namer: _Namer) -> list[_Entity]:
    entities: list[_Entity] = []
    for i in range(spec.class_count):
        entities.append(namer.next_entity(ns, "class", i))
    for i in range(spec.object_property_count):
        entities.append(namer.next_entity(ns, "op", i))
    for i in range(spec.data_property_count):
        entities.append(namer.next_entity(ns, "dp", i))
    return entities


def _axiom_triples(entities: Iterable[_Entity]) -> list[Triple]:
    triples = []
    for e in entities:
        if e.kind == "class":
            triples.append(Triple(e.term, iri(RDFS_SUBCLASSOF), iri(OWL_THING)))
        elif e.kind == "op":
            triples.append(Triple(e.term, iri(RDF_TYPE), iri(OWL_OBJECT_PROPERTY)))
        else:
            triples.append(Triple(e.term, iri(RDF_TYPE), iri(OWL_DATATYPE_PROPERTY)))
    return triples


def _label_text(entity: _Entity, lang: str, primary: str) -> str:
    if lang == primary:
        return entity.phrase
    return f"{entity.phrase} ({lang})"


def _label_triples(
    entities: list[_Entity], languages: Iterable[str], spec: GenerationSpec,
    primary: str, counts: dict[str, int],
) -> list[Triple]:
    triples = []
    for lang in languages:
        k = counts[lang]
        tag = parse_tag(lang).normalized
        for e in entities[:k]:
            triples.append(
                Triple(e.term, iri(RDFS_LABEL), literal(_label_text(e, lang, primary), language=tag))
            )
    return triples


def _entry_iris(base: str, lang: str, entity: _Entity) -> tuple[str, str, str]:
    stem = f"{base}lexicon/{lang}/entry-{entity.local}"
    return stem, stem + "-form", stem + "-sense"


def _lexicon_graph(
    spec: GenerationSpec, lang: str, entities: list[_Entity], k: int, with_senses: bool,
    reference_of: Mapping[str, str] | None = None,
) -> Graph:
    """Lexicon document: entries + canonical forms, optionally senses."""
    tag = parse_tag(lang).normalized
    triples: list[Triple] = []
    lang_iri = iri(LANGUAGE_IRI_BASE + tag)
    for e in entities[:k]:
        entry, form, sense = _entry_iris(spec.base_iri, lang, e)
        written = _label_text(e, lang, spec.languages[0]).lower()
        triples.extend(
            [
                Triple(iri(entry), iri(RDF_TYPE), iri(ONTOLEX_LEXICAL_ENTRY)),
                Triple(iri(entry), iri(DCTERMS_NS + "language"), lang_iri),
                Triple(iri(entry), iri(RDFS_LABEL), literal(written.capitalize(), language=tag)),
                Triple(iri(entry), iri(ONTOLEX_CANONICAL_FORM), iri(form)),
                Triple(iri(form), iri(RDF_TYPE), iri(ONTOLEX_FORM)),
                Triple(iri(form), iri(ONTOLEX_WRITTEN_REP), literal(written, language=tag)),
            ]
        )
        if with_senses:
            target = (reference_of or {}).get(e.iri_value, e.iri_value)
            triples.extend(
                [
                    Triple(iri(sense), iri(RDF_TYPE), iri(ONTOLEX_LEXICAL_SENSE)),
                    Triple(iri(sense), iri(ONTOLEX_IS_SENSE_OF), iri(entry)),
                    Triple(iri(sense), iri(ONTOLEX_REFERENCE), iri(target)),
                ]
            )
    return Graph(triples)


def _pairs(items: list, nary: bool) -> list[tuple]:
    if nary:
        return [(items[i], items[i + 1]) for i in range(len(items) - 1)]
    return [(a, b) for i, a in enumerate(items) for b in items[i + 1 :]]


def generate(spec: GenerationSpec) -> GeneratedCorpus:
    spec.validate()
    rng = random.Random(spec.seed)
    descriptive = spec.variant == detector.V_LABELS_PLD
    namer = _Namer(rng, descriptive)
    name = spec.corpus_name
    primary = spec.languages[0]
    family = _LABEL_FAMILY[spec.variant]

    ontology_docs: list[tuple[str, Graph]] = []
    lexicon_docs: list[tuple[str, Graph]] = []

    if family == detector.FAMILY_LABELS:
        entities = _make_entities(spec, spec.base_iri, namer)
        counts = {l: _ceil_count(spec.fraction(l), len(entities)) for l in spec.languages}
        triples = _axiom_triples(entities)
        triples += _label_triples(entities, spec.languages, spec, primary, counts)
        ontology_docs.append((name, Graph(triples)))
        cov = len(entities)
        lcom_counts = counts

    elif spec.variant in (detector.V_LING_ENTRIES, detector.V_LING_SENSES):
        entities = _make_entities(spec, spec.base_iri, namer)
        cov = len(entities)
        counts = {l: _ceil_count(spec.fraction(l), cov) for l in spec.languages}
        with_senses = spec.variant == detector.V_LING_SENSES
        triples = _axiom_triples(entities)
        # Ontology-side labels live in the primary language only; the other
        # languages are reachable through the lexicons.
        label_counts = {primary: counts[primary]}
        triples += _label_triples(entities, [primary], spec, primary, label_counts)
        if not with_senses:
            for lang in spec.languages:
                for e in entities[: counts[lang]]:
                    entry, _, _ = _entry_iris(spec.base_iri, lang, e)
                    triples.append(Triple(e.term, iri(ONTOLEX_IS_DENOTED_BY), iri(entry)))
        ontology_docs.append((name, Graph(triples)))
        for lang in spec.languages:
            lexicon_docs.append(
                (f"{name}-lex-{lang}", _lexicon_graph(spec, lang, entities, counts[lang], with_senses))
            )
        lcom_counts = {l: (counts[l] if l == primary else 0) for l in spec.languages}

    elif spec.variant in (detector.V_MAP_TBOX, detector.V_MAP_ANNOTATION, detector.V_MAP_ILI):
        per_language: dict[str, list[_Entity]] = {}
        for lang in spec.languages:
            ns = f"{spec.base_iri}{lang}/"
            per_language[lang] = _make_entities(spec, ns, namer)
        n_per = spec.class_count + spec.object_property_count + spec.data_property_count
        cov = n_per * len(spec.languages)
        counts = {l: _ceil_count(spec.fraction(l), n_per) for l in spec.languages}
        for lang in spec.languages:
            entities = per_language[lang]
            triples = _axiom_triples(entities)
            tag = parse_tag(lang).normalized
            for e in entities[: counts[lang]]:
                triples.append(
                    Triple(e.term, iri(RDFS_LABEL), literal(_label_text(e, lang, primary), language=tag))
                )
            if spec.variant == detector.V_MAP_ANNOTATION:
                ns = f"{spec.base_iri}{lang}/"
                for e in entities:
                    triples.append(
                        Triple(e.term, iri(RDFS_LABEL), iri(f"{ns}label/{e.local}"))
                    )
            ontology_docs.append((f"{name}-{lang}", Graph(triples)))

        bridge: list[Triple] = []
        for i in range(n_per):
            row = [per_language[lang][i] for lang in spec.languages]
            if spec.variant == detector.V_MAP_TBOX:
                if row[0].kind == "class":
                    for a, b in _pairs(row, spec.nary_bridge):
                        bridge.append(Triple(a.term, iri(OWL_EQUIVALENT_CLASS), b.term))
            elif spec.variant == detector.V_MAP_ANNOTATION:
                labels = [
                    iri(f"{spec.base_iri}{lang}/label/{per_language[lang][i].local}")
                    for lang in spec.languages
                ]
                for a, b in _pairs(labels, spec.nary_bridge):
                    bridge.append(Triple(a, iri(OWL_SAMEAS), b))
            else:  # interlingua concepts
                concept = iri(f"{SYNTHETIC_ILI_NS}{i:06d}")
                for e in row:
                    bridge.append(Triple(e.term, iri(OWL_SAMEAS), concept))
        ontology_docs.append((f"{name}-bridge", Graph(bridge)))
        lcom_counts = dict(counts)

    else:  # lexical-concept hubs
        entities = _make_entities(spec, spec.base_iri, namer)
        cov = len(entities)
        counts = {l: _ceil_count(spec.fraction(l), cov) for l in spec.languages}
        triples = _axiom_triples(entities)
        label_counts = {primary: counts[primary]}
        triples += _label_triples(entities, [primary], spec, primary, label_counts)
        hubs = {e.iri_value: f"{spec.base_iri}concepts/{i:06d}" for i, e in enumerate(entities)}
        for e in entities:
            triples.append(Triple(e.term, iri(ONTOLEX_CONCEPT), iri(hubs[e.iri_value])))
        ontology_docs.append((name, Graph(triples)))
        for lang in spec.languages:
            lexicon_docs.append(
                (f"{name}-lex-{lang}", _lexicon_graph(spec, lang, entities, counts[lang], True))
            )
        concept_triples: list[Triple] = []
        for i, e in enumerate(entities):
            hub = iri(hubs[e.iri_value])
            concept_triples.append(Triple(hub, iri(RDF_TYPE), iri(ONTOLEX_LEXICAL_CONCEPT)))
            for lang in spec.languages:
                if i < counts[lang]:
                    entry, _, sense = _entry_iris(spec.base_iri, lang, e)
                    concept_triples.append(Triple(hub, iri(ONTOLEX_LEXICALIZED_SENSE), iri(sense)))
                    concept_triples.append(Triple(hub, iri(ONTOLEX_IS_EVOKED_BY), iri(entry)))
        lexicon_docs.append((f"{name}-concepts", Graph(concept_triples)))
        lcom_counts = {l: (counts[l] if l == primary else 0) for l in spec.languages}

    lcom = {
        parse_tag(l).normalized: 100.0 * n / cov
        for l, n in sorted(lcom_counts.items())
        if cov and n > 0
    }
    labeled = {parse_tag(l).normalized: n for l, n in sorted(lcom_counts.items()) if n > 0}
    manifest = {
        "name": name,
        "variant": spec.variant,
        "family": family,
        "languages": [parse_tag(l).normalized for l in spec.languages],
        "seed": spec.seed,
        "expected": {
            "cov": cov,
            "lcom": lcom,
            "labeled_entities": labeled,
        },
        "documents": [
            {"name": doc_name, "role": role, "triples": len(g)}
            for role, docs in (("ontology", ontology_docs), ("lexicon", lexicon_docs))
            for doc_name, g in docs
        ],
    }
    return GeneratedCorpus(
        name=name,
        ontology_documents=tuple(ontology_docs),
        lexicon_documents=tuple(lexicon_docs),
        manifest=manifest,
    )


def emit_ntriples(corpus: GeneratedCorpus, directory: str | Path) -> list[Path]:
    """Write one .nt file per document plus the manifest sidecar."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths: list[Path] = []
    manifest = json.loads(json.dumps(corpus.manifest))  # deep copy
    for entry in manifest["documents"]:
        entry["path"] = entry["name"] + ".nt"
    for doc_name, graph in corpus.documents:
        path = directory / f"{doc_name}.nt"
        path.write_bytes(serialize_graph(graph).encode("utf-8"))
        paths.append(path)
    manifest_path = directory / MANIFEST_FILENAME
    manifest_path.write_bytes(
        (json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    )
    paths.append(manifest_path)
    return paths


def load_manifest(directory: str | Path) -> dict:
    return json.loads((Path(directory) / MANIFEST_FILENAME).read_text("utf-8"))


def validate_sense_cardinality(g: Graph) -> list[str]:
    """Each lexical sense must have exactly one entry link and one reference."""
    violations = []
    senses = {
        t.subject for t in g.match(predicate=iri(RDF_TYPE), object=iri(ONTOLEX_LEXICAL_SENSE))
    }
    for sense in sorted(senses, key=lambda s: s.value):
        entry_links = len(g.objects_of(sense, iri(ONTOLEX_IS_SENSE_OF)))
        entry_links += len(g.subjects_of(iri(ONTOLEX_SENSE), object=sense))
        references = len(g.objects_of(sense, iri(ONTOLEX_REFERENCE)))
        if entry_links != 1:
            violations.append(f"sense {sense.value} has {entry_links} entry links (expected 1)")
        if references != 1:
            violations.append(f"sense {sense.value} has {references} references (expected 1)")
    return violations


def validate_preflabel_uniqueness(g: Graph) -> list[str]:
    """skos:prefLabel may be used only once per natural language per entity."""
    seen: dict[tuple[str, str], int] = {}
    for t in g.match(predicate=iri(SKOS_PREFLABEL)):
        if not t.object.is_literal:
            continue
        key = (repr(t.subject), t.object.language or "")
        seen[key] = seen.get(key, 0) + 1
    return [
        f"{subject} has {count} skos:prefLabel values for language {lang or '(untagged)'}"
        for (subject, lang), count in sorted(seen.items())
        if count > 1
    ]


def inflection_showcase(base_iri: str = "http://example.org/showcase/") -> GeneratedCorpus:
    """Fixed corpus with gendered alternate-form entries for one property.

    Grammatical gender is represented as two separate Spanish lexical
    entries for the same property, not as a morphology engine.
    """
    prop = iri(base_iri + "changedBy")
    en_entry = iri(base_iri + "lexicon/en/entry-changedBy")
    es_f = iri(base_iri + "lexicon/es/entry-modificadaPor")
    es_m = iri(base_iri + "lexicon/es/entry-modificadoPor")

    ontology = Graph(
        [
            Triple(prop, iri(RDF_TYPE), iri(OWL_OBJECT_PROPERTY)),
            Triple(prop, iri(RDFS_LABEL), literal("changed by", language="en")),
            Triple(prop, iri(SKOS_PREFLABEL), literal("changed by", language="en")),
            Triple(prop, iri(SKOS_PREFLABEL), literal("es modificado por", language="es")),
            Triple(prop, iri(SKOS_ALTLABEL), literal("es modificada por", language="es")),
            Triple(prop, iri(ONTOLEX_IS_DENOTED_BY), en_entry),
            Triple(prop, iri(ONTOLEX_IS_DENOTED_BY), es_f),
            Triple(prop, iri(ONTOLEX_IS_DENOTED_BY), es_m),
        ]
    )

    def entry_doc(entry: TermValue, lang: str, written: str) -> Graph:
        form = iri(entry.value + "-form")
        return Graph(
            [
                Triple(entry, iri(RDF_TYPE), iri(ONTOLEX_LEXICAL_ENTRY)),
                Triple(entry, iri(DCTERMS_NS + "language"), iri(LANGUAGE_IRI_BASE + lang)),
                Triple(entry, iri(RDFS_LABEL), literal(written, language=lang)),
                Triple(entry, iri(ONTOLEX_CANONICAL_FORM), form),
                Triple(form, iri(RDF_TYPE), iri(ONTOLEX_FORM)),
                Triple(form, iri(ONTOLEX_WRITTEN_REP), literal(written, language=lang)),
            ]
        )

    lex_en = entry_doc(en_entry, "en", "changed by")
    lex_es = Graph(
        list(entry_doc(es_f, "es", "es modificada por").triples)
        + list(entry_doc(es_m, "es", "es modificado por").triples)
    )
    manifest = {
        "name": "inflection-showcase",
        "variant": detector.V_LING_ENTRIES,
        "family": detector.FAMILY_LINGUISTIC,
        "languages": ["en", "es"],
        "seed": 0,
        "expected": {
            "cov": 1,
            "lcom": {"en": 100.0, "es": 100.0},
            "labeled_entities": {"en": 1, "es": 1},
        },
        "documents": [
            {"name": "inflection-showcase", "role": "ontology", "triples": len(ontology)},
            {"name": "inflection-showcase-lex-en", "role": "lexicon", "triples": len(lex_en)},
            {"name": "inflection-showcase-lex-es", "role": "lexicon", "triples": len(lex_es)},
        ],
    }
    return GeneratedCorpus(
        name="inflection-showcase",
        ontology_documents=(("inflection-showcase", ontology),),
        lexicon_documents=(
            ("inflection-showcase-lex-en", lex_en),
            ("inflection-showcase-lex-es", lex_es),
        ),
        manifest=manifest,
    )
