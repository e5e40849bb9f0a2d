from __future__ import annotations

from ontoaudit.formats import parse_document
from ontoaudit.langtags import UNTAGGED, parse_tag
from ontoaudit.model import Graph, Triple, bnode, iri, literal
from ontoaudit.signature import collect_annotations, extract_signature, local_namespaces
from ontoaudit.vocab import (
    OWL_CLASS,
    OWL_EQUIVALENT_CLASS,
    OWL_IMPORTS,
    OWL_OBJECT_PROPERTY,
    OWL_THING,
    RDF_TYPE,
    RDFS_LABEL,
    RDFS_SUBCLASSOF,
    SKOS_PREFLABEL,
)

PERSON_FRAGMENT = b"""@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix : <http://example.com/onto#> .
:Person rdfs:subClassOf owl:Thing ;
    rdfs:label "Person"@en , "Persoon"@nl .
"""


def test_single_class_fragment_signature():
    g = parse_document(PERSON_FRAGMENT, "turtle")
    sig = extract_signature(g)
    assert sig.classes == {"http://example.com/onto#Person"}
    assert not sig.object_properties and not sig.data_properties
    assert sig.coverage() == 1


def test_equivalence_operands_count_as_classes():
    g = Graph([
        Triple(iri("http://a/Person"), iri(OWL_EQUIVALENT_CLASS), iri("http://b/Persoon")),
        Triple(iri("http://b/Persoon"), iri(OWL_EQUIVALENT_CLASS), iri("http://c/Umntu")),
    ])
    sig = extract_signature(g)
    assert len(sig.classes) == 3


def test_reserved_vocabulary_and_thing_excluded():
    g = parse_document(PERSON_FRAGMENT, "turtle")
    sig = extract_signature(g)
    assert OWL_THING not in sig.classes
    assert not any(e.startswith("http://www.w3.org/") for e in sig.entities)


def test_property_kind_propagates_through_subproperty_axioms():
    g = Graph([
        Triple(iri("http://x/p"), iri(RDF_TYPE), iri(OWL_OBJECT_PROPERTY)),
        Triple(iri("http://x/q"), iri("http://www.w3.org/2000/01/rdf-schema#subPropertyOf"), iri("http://x/p")),
        Triple(iri("http://x/r"), iri("http://www.w3.org/2000/01/rdf-schema#subPropertyOf"), iri("http://x/q")),
    ])
    sig = extract_signature(g)
    assert sig.object_properties == {"http://x/p", "http://x/q", "http://x/r"}


def test_imports_recorded_but_opaque():
    base = parse_document(PERSON_FRAGMENT, "turtle")
    with_import = Graph(
        list(base.triples)
        + [Triple(iri("http://example.com/onto"), iri(OWL_IMPORTS), iri("http://other.org/onto"))]
    )
    sig_before = extract_signature(base)
    sig_after = extract_signature(with_import)
    assert sig_after.declared_imports == {"http://other.org/onto"}
    assert sig_after.classes == sig_before.classes
    assert sig_after.object_properties == sig_before.object_properties


def test_signature_is_monotone_under_triple_addition():
    base = parse_document(PERSON_FRAGMENT, "turtle")
    extended = Graph(
        list(base.triples)
        + [Triple(iri("http://example.com/onto#Animal"), iri(RDF_TYPE), iri(OWL_CLASS))]
    )
    before = extract_signature(base)
    after = extract_signature(extended)
    assert before.classes <= after.classes
    assert before.object_properties <= after.object_properties
    assert before.data_properties <= after.data_properties


def test_anonymous_class_expressions_counted_not_included():
    g = Graph([
        Triple(iri("http://x/A"), iri(RDFS_SUBCLASSOF), bnode("restriction1")),
    ])
    sig = extract_signature(g)
    assert sig.classes == {"http://x/A"}
    assert sig.anonymous_class_expressions == 1


def test_punning_membership_in_both_sets():
    g = Graph([
        Triple(iri("http://x/P"), iri(RDF_TYPE), iri(OWL_CLASS)),
        Triple(iri("http://x/P"), iri(RDF_TYPE), iri(OWL_OBJECT_PROPERTY)),
    ])
    sig = extract_signature(g)
    assert "http://x/P" in sig.classes and "http://x/P" in sig.object_properties
    assert sig.punned == {"http://x/P"}
    assert sig.coverage() == 2  # counted once per applicable set


def test_local_namespaces_from_base():
    g = parse_document(b"@base <http://ex.org/o#> .\n<c> <p> <o> .\n", "turtle")
    assert "http://ex.org/o#" in local_namespaces(g)


def test_local_namespaces_from_ontology_iri_both_separators():
    g = Graph([
        Triple(iri("http://ex.org/onto"), iri(RDF_TYPE), iri("http://www.w3.org/2002/07/owl#Ontology")),
    ])
    namespaces = local_namespaces(g)
    assert "http://ex.org/onto#" in namespaces and "http://ex.org/onto/" in namespaces


def test_collect_annotations_literal_rows():
    g = parse_document(PERSON_FRAGMENT, "turtle")
    sig = extract_signature(g)
    inv = collect_annotations(g, sig)
    assert len(inv.rows) == 2
    languages = sorted(r.language.normalized for r in inv.rows)
    assert languages == ["en", "nl"]


def test_collect_annotations_untagged_and_duplicate_properties():
    person = iri("http://x/Person")
    g = Graph([
        Triple(person, iri(RDF_TYPE), iri(OWL_CLASS)),
        Triple(person, iri(RDFS_LABEL), literal("x", language="en")),
        Triple(person, iri(SKOS_PREFLABEL), literal("x", language="en")),
        Triple(person, iri(RDFS_LABEL), literal("no tag")),
    ])
    sig = extract_signature(g)
    inv = collect_annotations(g, sig)
    assert len(inv.rows) == 3  # inventory keeps one row per assertion
    assert sum(1 for r in inv.rows if r.language == UNTAGGED) == 1


def test_collect_annotations_iri_values_with_locality():
    onto = iri("http://ex.org/onto")
    person = iri("http://ex.org/onto#Person")
    g = Graph([
        Triple(onto, iri(RDF_TYPE), iri("http://www.w3.org/2002/07/owl#Ontology")),
        Triple(person, iri(RDF_TYPE), iri(OWL_CLASS)),
        Triple(person, iri(RDFS_LABEL), iri("http://ex.org/onto#PersonLabel")),
        Triple(person, iri(RDFS_LABEL), iri("http://elsewhere.org/x")),
    ])
    sig = extract_signature(g)
    rows = collect_annotations(g, sig).iri_rows()
    locality = {r.value.value: r.is_local_iri for r in rows}
    assert locality == {"http://ex.org/onto#PersonLabel": True, "http://elsewhere.org/x": False}
    assert all(r.language is None for r in rows)


def test_annotations_outside_signature_ignored():
    g = Graph([
        Triple(iri("http://x/A"), iri(RDF_TYPE), iri(OWL_CLASS)),
        Triple(iri("http://x/NotAnEntity"), iri(RDFS_LABEL), literal("stray", language="en")),
    ])
    sig = extract_signature(g)
    inv = collect_annotations(g, sig)
    assert inv.rows == ()
