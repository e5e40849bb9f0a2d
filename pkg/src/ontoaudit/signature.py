"""Extract the class/property signature and annotation inventory of a graph.

The signature holds only named entities asserted by this document itself:
owl:imports targets are recorded but never dereferenced, and entities in
foreign namespaces used by local axioms are included.  Reserved RDF/RDFS/
OWL/XSD vocabulary and owl:Thing/owl:Nothing never count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import vocab
from .langtags import UNTAGGED, LanguageTag, parse_tag
from .model import Graph, TermValue, iri
from .vocab import (
    DEFAULT_LABEL_PROPERTIES,
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_DISJOINT_WITH,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
    OWL_IMPORTS,
    OWL_INVERSE_OF,
    OWL_NOTHING,
    OWL_OBJECT_PROPERTY,
    OWL_ONTOLOGY,
    OWL_THING,
    RDF_TYPE,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    RESERVED_NAMESPACES,
)

__all__ = [
    "OntologySignature",
    "AnnotationRow",
    "AnnotationInventory",
    "extract_signature",
    "collect_annotations",
    "local_namespaces",
]

_TYPE = iri(RDF_TYPE)


def _is_reserved(entity: str) -> bool:
    return entity in (OWL_THING, OWL_NOTHING) or entity.startswith(RESERVED_NAMESPACES)


def _named(term: TermValue) -> str | None:
    """IRI string for countable entities; None for blanks, literals, reserved."""
    if not term.is_iri or _is_reserved(term.value):
        return None
    return term.value


@dataclass(frozen=True)
class OntologySignature:
    classes: frozenset[str]
    object_properties: frozenset[str]
    data_properties: frozenset[str]
    declared_imports: frozenset[str]
    ontology_iri: str | None
    local_namespaces: frozenset[str]
    punned: frozenset[str] = frozenset()
    anonymous_class_expressions: int = 0

    @property
    def entities(self) -> frozenset[str]:
        return self.classes | self.object_properties | self.data_properties

    def coverage(self) -> int:
        return len(self.classes) + len(self.object_properties) + len(self.data_properties)


@dataclass(frozen=True)
class AnnotationRow:
    entity: str
    property: str
    value: TermValue
    language: LanguageTag | None  # None for IRI-valued annotations
    is_local_iri: bool | None = None  # locality judgment for IRI values


@dataclass(frozen=True)
class AnnotationInventory:
    rows: tuple[AnnotationRow, ...]
    _by_entity: dict = field(default_factory=dict, compare=False, repr=False)

    def by_entity(self, entity: str) -> list[AnnotationRow]:
        if not self._by_entity:
            for row in self.rows:
                self._by_entity.setdefault(row.entity, []).append(row)
        return self._by_entity.get(entity, [])

    def literal_rows(self) -> list[AnnotationRow]:
        return [r for r in self.rows if r.value.is_literal]

    def iri_rows(self) -> list[AnnotationRow]:
        return [r for r in self.rows if r.value.is_iri]


def local_namespaces(g: Graph) -> frozenset[str]:
    """Namespaces judged local when an annotation value is an IRI.

    The ontology IRI contributes both separator conventions unless it
    already ends in one; the document base and the empty prefix count
    verbatim.
    """
    namespaces: set[str] = set()
    ontology_iri = _ontology_iri(g)
    if ontology_iri:
        if ontology_iri.endswith(("#", "/")):
            namespaces.add(ontology_iri)
        else:
            namespaces.add(ontology_iri + "#")
            namespaces.add(ontology_iri + "/")
    if g.base_iri:
        namespaces.add(g.base_iri)
    empty_prefix = g.prefix_map.get("")
    if empty_prefix:
        namespaces.add(empty_prefix)
    return frozenset(namespaces)


def _ontology_iri(g: Graph) -> str | None:
    candidates = sorted(
        t.subject.value
        for t in g.match(predicate=_TYPE, object=iri(OWL_ONTOLOGY))
        if t.subject.is_iri
    )
    return candidates[0] if candidates else None


def extract_signature(g: Graph) -> OntologySignature:
    classes: set[str] = set()
    object_properties: set[str] = set()
    data_properties: set[str] = set()
    imports: set[str] = set()
    anonymous = 0

    sub_property_pairs: list[tuple[TermValue, TermValue]] = []

    for t in g.triples:
        p = t.predicate.value
        if p == RDF_TYPE and t.object.is_iri:
            o = t.object.value
            name = _named(t.subject)
            if name is None:
                continue
            if o == OWL_CLASS:
                classes.add(name)
            elif o == OWL_OBJECT_PROPERTY:
                object_properties.add(name)
            elif o == OWL_DATATYPE_PROPERTY:
                data_properties.add(name)
        elif p in (RDFS_SUBCLASSOF, OWL_EQUIVALENT_CLASS, OWL_DISJOINT_WITH):
            for term in (t.subject, t.object):
                name = _named(term)
                if name is not None:
                    classes.add(name)
                elif term.is_blank:
                    anonymous += 1
        elif p == OWL_INVERSE_OF:
            for term in (t.subject, t.object):
                name = _named(term)
                if name is not None:
                    object_properties.add(name)
        elif p == OWL_IMPORTS and t.object.is_iri:
            imports.add(t.object.value)
        elif p in (RDFS_SUBPROPERTYOF, OWL_EQUIVALENT_PROPERTY):
            sub_property_pairs.append((t.subject, t.object))

    # Property axioms classify the other side once one side's kind is known;
    # iterate to a fixpoint to follow chains.
    changed = True
    while changed:
        changed = False
        for s, o in sub_property_pairs:
            s_name, o_name = _named(s), _named(o)
            if s_name is None or o_name is None:
                continue
            for bucket in (object_properties, data_properties):
                if s_name in bucket and o_name not in bucket:
                    bucket.add(o_name)
                    changed = True
                elif o_name in bucket and s_name not in bucket:
                    bucket.add(s_name)
                    changed = True

    punned = (classes & object_properties) | (classes & data_properties) | (
        object_properties & data_properties
    )
    return OntologySignature(
        classes=frozenset(classes),
        object_properties=frozenset(object_properties),
        data_properties=frozenset(data_properties),
        declared_imports=frozenset(imports),
        ontology_iri=_ontology_iri(g),
        local_namespaces=local_namespaces(g),
        punned=frozenset(punned),
        anonymous_class_expressions=anonymous,
    )


def collect_annotations(
    g: Graph,
    sig: OntologySignature,
    properties: tuple[str, ...] | frozenset[str] = DEFAULT_LABEL_PROPERTIES,
) -> AnnotationInventory:
    """Inventory every (entity, property, value) whose subject is in the signature.

    Literal values carry their parsed language tag, or the untagged marker;
    IRI values carry a locality judgment instead of a language.
    """
    if not properties:
        raise ValueError("at least one annotation property is required")
    wanted = frozenset(properties)
    entities = sig.entities
    rows: list[AnnotationRow] = []
    for t in g.sorted_triples():
        if t.predicate.value not in wanted or not t.subject.is_iri:
            continue
        entity = t.subject.value
        if entity not in entities:
            continue
        value = t.object
        if value.is_literal:
            tag = parse_tag(value.language) if value.language else UNTAGGED
            rows.append(AnnotationRow(entity, t.predicate.value, value, tag))
        elif value.is_iri:
            local = any(value.value.startswith(ns) for ns in sig.local_namespaces)
            rows.append(AnnotationRow(entity, t.predicate.value, value, None, local))
        # Blank-node annotation values carry no usable label content.
    return AnnotationInventory(rows=tuple(rows))
