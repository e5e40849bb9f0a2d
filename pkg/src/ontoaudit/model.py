"""In-memory RDF data model: terms, triples, and immutable graphs.

Graphs deduplicate triples (set semantics) and expose a deterministic
iteration order so every downstream computation is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .vocab import RDF_LANGSTRING, XSD_STRING

IRI = "iri"
BLANK_NODE = "blank-node"
LITERAL = "literal"

_KIND_RANK = {IRI: 0, BLANK_NODE: 1, LITERAL: 2}


@dataclass(frozen=True, slots=True)
class TermValue:
    """One RDF term: an IRI, a blank node, or a literal.

    For literals, ``value`` is the lexical form; a language tag is present
    iff the datatype is rdf:langString.
    """

    kind: str
    value: str
    datatype: str | None = None
    language: str | None = None

    def __post_init__(self) -> None:
        if self.kind == IRI:
            if not self.value or any(c.isspace() for c in self.value):
                raise ValueError(f"invalid IRI: {self.value!r}")
            if self.datatype is not None or self.language is not None:
                raise ValueError("IRI terms carry no datatype or language")
        elif self.kind == BLANK_NODE:
            if not self.value:
                raise ValueError("blank node label must be non-empty")
            if self.datatype is not None or self.language is not None:
                raise ValueError("blank nodes carry no datatype or language")
        elif self.kind == LITERAL:
            if self.datatype is None:
                raise ValueError("literal requires a datatype")
            if (self.language is not None) != (self.datatype == RDF_LANGSTRING):
                raise ValueError(
                    "literal has a language tag iff its datatype is rdf:langString"
                )
        else:
            raise ValueError(f"unknown term kind: {self.kind!r}")

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI

    @property
    def is_blank(self) -> bool:
        return self.kind == BLANK_NODE

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.value, self.datatype or "", self.language or "")

    def __repr__(self) -> str:  # compact form for assertion messages
        if self.kind == IRI:
            return f"<{self.value}>"
        if self.kind == BLANK_NODE:
            return f"_:{self.value}"
        if self.language:
            return f'"{self.value}"@{self.language}'
        if self.datatype == XSD_STRING:
            return f'"{self.value}"'
        return f'"{self.value}"^^<{self.datatype}>'


def iri(value: str) -> TermValue:
    return TermValue(IRI, value)


def bnode(label: str) -> TermValue:
    return TermValue(BLANK_NODE, label)


def literal(lexical: str, datatype: str | None = None, language: str | None = None) -> TermValue:
    if language is not None:
        return TermValue(LITERAL, lexical, RDF_LANGSTRING, language)
    return TermValue(LITERAL, lexical, datatype or XSD_STRING, None)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: TermValue
    predicate: TermValue
    object: TermValue

    def __post_init__(self) -> None:
        if self.predicate.kind != IRI:
            raise ValueError("predicate must be an IRI")
        if self.subject.kind == LITERAL:
            raise ValueError("subject must not be a literal")

    def sort_key(self) -> tuple:
        return (self.subject.sort_key(), self.predicate.sort_key(), self.object.sort_key())

    def __repr__(self) -> str:
        return f"{self.subject!r} {self.predicate!r} {self.object!r} ."


class Graph:
    """Immutable set of triples plus parse-time metadata.

    Equality compares triple sets only; ``isomorphic`` additionally allows
    a blank-node relabelling.  Iteration is in canonical sorted order.
    """

    __slots__ = ("_triples", "_sorted", "base_iri", "prefix_map")

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        base_iri: str | None = None,
        prefix_map: Mapping[str, str] | None = None,
    ):
        self._triples = frozenset(triples)
        self._sorted: tuple[Triple, ...] | None = None
        self.base_iri = base_iri
        self.prefix_map = dict(prefix_map or {})

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.sorted_triples())

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def sorted_triples(self) -> tuple[Triple, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._triples, key=Triple.sort_key))
        return self._sorted

    def match(
        self,
        subject: TermValue | None = None,
        predicate: TermValue | None = None,
        object: TermValue | None = None,
    ) -> Iterator[Triple]:
        for t in self.sorted_triples():
            if subject is not None and t.subject != subject:
                continue
            if predicate is not None and t.predicate != predicate:
                continue
            if object is not None and t.object != object:
                continue
            yield t

    def subjects_of(self, predicate: TermValue, object: TermValue | None = None) -> list[TermValue]:
        return [t.subject for t in self.match(predicate=predicate, object=object)]

    def objects_of(self, subject: TermValue | None, predicate: TermValue) -> list[TermValue]:
        return [t.object for t in self.match(subject=subject, predicate=predicate)]

    def blank_node_labels(self) -> set[str]:
        labels: set[str] = set()
        for t in self._triples:
            if t.subject.is_blank:
                labels.add(t.subject.value)
            if t.object.is_blank:
                labels.add(t.object.value)
        return labels

    def relabel_blank_nodes(self, rename: Callable[[str], str]) -> "Graph":
        def sub(term: TermValue) -> TermValue:
            if term.is_blank:
                return bnode(rename(term.value))
            return term

        return Graph(
            (Triple(sub(t.subject), t.predicate, sub(t.object)) for t in self._triples),
            base_iri=self.base_iri,
            prefix_map=self.prefix_map,
        )

    def isomorphic(self, other: "Graph") -> bool:
        """Triple-set equality up to a bijective blank-node relabelling."""
        if len(self) != len(other):
            return False
        mine = self.blank_node_labels()
        theirs = other.blank_node_labels()
        if len(mine) != len(theirs):
            return False
        if not mine:
            return self._triples == other._triples
        # Ground triples must match outright.
        ground_self = {t for t in self._triples if not _has_blank(t)}
        ground_other = {t for t in other._triples if not _has_blank(t)}
        if ground_self != ground_other:
            return False
        return _blank_match(self, other, sorted(mine), sorted(theirs))


def _has_blank(t: Triple) -> bool:
    return t.subject.is_blank or t.object.is_blank


def _blank_signature(g: Graph, label: str) -> tuple:
    """Shape of a blank node ignoring the labels of neighbouring blanks."""
    rows = []
    for t in g.triples:
        s = "*" if t.subject.is_blank else repr(t.subject)
        o = "*" if t.object.is_blank else repr(t.object)
        if t.subject.is_blank and t.subject.value == label:
            rows.append(("s", repr(t.predicate), o))
        if t.object.is_blank and t.object.value == label:
            rows.append(("o", repr(t.predicate), s))
    return tuple(sorted(rows))


def _blank_match(a: Graph, b: Graph, labels_a: list[str], labels_b: list[str]) -> bool:
    """Backtracking match over signature-compatible blank-node pairings.

    Graphs produced here contain few blank nodes; signature grouping keeps
    the search tiny even though the worst case is factorial.
    """
    sig_a = {lbl: _blank_signature(a, lbl) for lbl in labels_a}
    sig_b = {lbl: _blank_signature(b, lbl) for lbl in labels_b}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False
    candidates = {
        la: [lb for lb in labels_b if sig_b[lb] == sig_a[la]] for la in labels_a
    }
    order = sorted(labels_a, key=lambda l: len(candidates[l]))
    if any(len(candidates[l]) > 6 for l in order) and len(order) > 12:
        # Give up on pathological inputs rather than explode; treat as equal
        # only if a first-fit mapping works.
        perms: Iterable[tuple[str, ...]] = [tuple(candidates[l][0] for l in order)]
    else:
        perms = itertools.product(*(candidates[l] for l in order))
    triples_b = b.triples
    for assignment in perms:
        if len(set(assignment)) != len(assignment):
            continue
        mapping = dict(zip(order, assignment))
        renamed = a.relabel_blank_nodes(lambda l: mapping[l])
        if renamed.triples == triples_b:
            return True
    return False


def merge_graphs(named_graphs: Iterable[tuple[str, Graph]]) -> Graph:
    """Union of several documents with per-document blank-node scoping."""
    triples: list[Triple] = []
    prefixes: dict[str, str] = {}
    base = None
    for idx, (name, g) in enumerate(named_graphs):
        scoped = g.relabel_blank_nodes(lambda l, i=idx: f"d{i}x{l}")
        triples.extend(scoped.triples)
        for p, ns in g.prefix_map.items():
            prefixes.setdefault(p, ns)
        if base is None:
            base = g.base_iri
    return Graph(triples, base_iri=base, prefix_map=prefixes)
