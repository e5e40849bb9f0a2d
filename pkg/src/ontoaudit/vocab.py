"""Well-known namespaces and term IRIs used across the package."""

from __future__ import annotations

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
DCTERMS_NS = "http://purl.org/dc/terms/"
ONTOLEX_NS = "http://www.w3.org/ns/lemon/ontolex#"
DECOMP_NS = "http://www.w3.org/ns/lemon/decomp#"
LEMON_NS = "http://lemon-model.net/lemon#"
LEXINFO2_NS = "http://www.lexinfo.net/ontology/2.0/lexinfo#"
LEXINFO3_NS = "http://www.lexinfo.net/ontology/3.0/lexinfo#"
LINGINFO_NS = "http://www.dfki.de/lt/linginfo.owl#"
LEXONTO_NS = "http://www.cimiano.de/lexonto#"
GOLD_NS = "http://purl.org/linguistics/gold/"

RDF_TYPE = RDF_NS + "type"
RDF_LANGSTRING = RDF_NS + "langString"
RDF_FIRST = RDF_NS + "first"
RDF_REST = RDF_NS + "rest"
RDF_NIL = RDF_NS + "nil"

XSD_STRING = XSD_NS + "string"
XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_DOUBLE = XSD_NS + "double"
XSD_BOOLEAN = XSD_NS + "boolean"

RDFS_LABEL = RDFS_NS + "label"
RDFS_COMMENT = RDFS_NS + "comment"
RDFS_SUBCLASSOF = RDFS_NS + "subClassOf"
RDFS_SUBPROPERTYOF = RDFS_NS + "subPropertyOf"

OWL_CLASS = OWL_NS + "Class"
OWL_THING = OWL_NS + "Thing"
OWL_NOTHING = OWL_NS + "Nothing"
OWL_ONTOLOGY = OWL_NS + "Ontology"
OWL_OBJECT_PROPERTY = OWL_NS + "ObjectProperty"
OWL_DATATYPE_PROPERTY = OWL_NS + "DatatypeProperty"
OWL_ANNOTATION_PROPERTY = OWL_NS + "AnnotationProperty"
OWL_IMPORTS = OWL_NS + "imports"
OWL_SAMEAS = OWL_NS + "sameAs"
OWL_EQUIVALENT_CLASS = OWL_NS + "equivalentClass"
OWL_EQUIVALENT_PROPERTY = OWL_NS + "equivalentProperty"
OWL_DISJOINT_WITH = OWL_NS + "disjointWith"
OWL_INVERSE_OF = OWL_NS + "inverseOf"
OWL_DEPRECATED = OWL_NS + "deprecated"

SKOS_PREFLABEL = SKOS_NS + "prefLabel"
SKOS_ALTLABEL = SKOS_NS + "altLabel"
SKOS_MAPPING_RELATION = SKOS_NS + "mappingRelation"
SKOS_EXACT_MATCH = SKOS_NS + "exactMatch"
SKOS_CLOSE_MATCH = SKOS_NS + "closeMatch"
SKOS_BROAD_MATCH = SKOS_NS + "broadMatch"
SKOS_NARROW_MATCH = SKOS_NS + "narrowMatch"
SKOS_RELATED_MATCH = SKOS_NS + "relatedMatch"

SKOS_MAPPING_PREDICATES = frozenset(
    {
        SKOS_MAPPING_RELATION,
        SKOS_EXACT_MATCH,
        SKOS_CLOSE_MATCH,
        SKOS_BROAD_MATCH,
        SKOS_NARROW_MATCH,
        SKOS_RELATED_MATCH,
    }
)

ONTOLEX_LEXICAL_ENTRY = ONTOLEX_NS + "LexicalEntry"
ONTOLEX_FORM = ONTOLEX_NS + "Form"
ONTOLEX_LEXICAL_SENSE = ONTOLEX_NS + "LexicalSense"
ONTOLEX_LEXICAL_CONCEPT = ONTOLEX_NS + "LexicalConcept"
ONTOLEX_CANONICAL_FORM = ONTOLEX_NS + "canonicalForm"
ONTOLEX_WRITTEN_REP = ONTOLEX_NS + "writtenRep"
ONTOLEX_IS_DENOTED_BY = ONTOLEX_NS + "isDenotedBy"
ONTOLEX_DENOTES = ONTOLEX_NS + "denotes"
ONTOLEX_SENSE = ONTOLEX_NS + "sense"
ONTOLEX_IS_SENSE_OF = ONTOLEX_NS + "isSenseOf"
ONTOLEX_REFERENCE = ONTOLEX_NS + "reference"
ONTOLEX_IS_REFERENCE_OF = ONTOLEX_NS + "isReferenceOf"
ONTOLEX_CONCEPT = ONTOLEX_NS + "concept"
ONTOLEX_IS_CONCEPT_OF = ONTOLEX_NS + "isConceptOf"
ONTOLEX_EVOKES = ONTOLEX_NS + "evokes"
ONTOLEX_IS_EVOKED_BY = ONTOLEX_NS + "isEvokedBy"
ONTOLEX_LEXICALIZED_SENSE = ONTOLEX_NS + "lexicalizedSense"
ONTOLEX_IS_LEXICALIZED_SENSE_OF = ONTOLEX_NS + "isLexicalizedSenseOf"

# Reserved vocabularies whose members never count as ontology entities.
RESERVED_NAMESPACES = (RDF_NS, RDFS_NS, OWL_NS, XSD_NS)

# Default linguistic-model namespace watchlist (prefix -> namespace IRI).
DEFAULT_LINGUISTIC_NAMESPACES: dict[str, str] = {
    "ontolex": ONTOLEX_NS,
    "decomp": DECOMP_NS,
    "lemon": LEMON_NS,
    "lexinfo": LEXINFO2_NS,
    "lexinfo3": LEXINFO3_NS,
    "linginfo": LINGINFO_NS,
    "lexonto": LEXONTO_NS,
    "gold": GOLD_NS,
}

# Namespaces treated as interlingual-index concept spaces for the
# owl:sameAs-into-interlingua mapping variant.  The example.org entry is the
# synthetic namespace used by the corpus generator.
SYNTHETIC_ILI_NS = "http://ili.example.org/i"
DEFAULT_ILI_NAMESPACES: tuple[str, ...] = (
    SYNTHETIC_ILI_NS,
    "http://globalwordnet.github.io/ili/",
    "http://ili.globalwordnet.org/ili/",
)

DEFAULT_LABEL_PROPERTIES: tuple[str, ...] = (
    RDFS_LABEL,
    SKOS_PREFLABEL,
    SKOS_ALTLABEL,
)
