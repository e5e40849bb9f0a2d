"""RDF/XML parser for an explicit subset; out-of-subset constructs are errors.

Supported: rdf:RDF roots, typed node elements and rdf:Description,
rdf:about / rdf:ID / rdf:nodeID subjects, property elements with
rdf:resource / rdf:nodeID / nested node elements / rdf:parseType="Resource",
rdf:datatype, property attributes, rdf:type attributes, xml:lang and
xml:base scoping.  Everything else (rdf:parseType="Literal" or
"Collection", rdf:li containers, reification via rdf:ID on property
elements) raises UnsupportedConstructError rather than dropping triples:
silent drops would corrupt coverage counts downstream.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from urllib.parse import urljoin

from .errors import EncodingError, ParseError, UnsupportedConstructError
from .model import Graph, TermValue, Triple, bnode, iri, literal
from .vocab import RDF_NS

__all__ = ["parse_rdfxml"]

_XML_NS = "http://www.w3.org/XML/1998/namespace"

_RDF = "{" + RDF_NS + "}"
_RDF_RDF = _RDF + "RDF"
_RDF_DESCRIPTION = _RDF + "Description"
_RDF_ABOUT = _RDF + "about"
_RDF_ID = _RDF + "ID"
_RDF_NODEID = _RDF + "nodeID"
_RDF_RESOURCE = _RDF + "resource"
_RDF_DATATYPE = _RDF + "datatype"
_RDF_PARSETYPE = _RDF + "parseType"
_RDF_TYPE_ATTR = _RDF + "type"
_RDF_LI = _RDF + "li"
_RDF_TYPE = RDF_NS + "type"

_XML_LANG = "{" + _XML_NS + "}lang"
_XML_BASE = "{" + _XML_NS + "}base"
_XML_SPACE = "{" + _XML_NS + "}space"


def _expand(tag: str) -> str:
    if not tag.startswith("{"):
        raise UnsupportedConstructError(f"element <{tag}> has no namespace")
    ns, local = tag[1:].split("}", 1)
    return ns + local


def _display(tag: str) -> str:
    return tag.split("}", 1)[-1]


class _RdfXmlReader:
    def __init__(self, base: str | None):
        self.triples: list[Triple] = []
        self.base = base
        self._genid = 0

    def _fresh(self) -> TermValue:
        self._genid += 1
        return bnode(f"genid{self._genid}")

    def _resolve(self, ref: str, base: str | None) -> TermValue:
        if base is None:
            return iri(ref)
        return iri(urljoin(base, ref))

    def _scoped(self, elem: ET.Element, base: str | None, lang: str | None):
        if _XML_BASE in elem.attrib:
            declared = elem.attrib[_XML_BASE]
            base = declared if base is None else urljoin(base, declared)
        if _XML_LANG in elem.attrib:
            lang = elem.attrib[_XML_LANG] or None
        return base, lang

    def read_node(self, elem: ET.Element, base: str | None, lang: str | None) -> TermValue:
        base, lang = self._scoped(elem, base, lang)
        about = elem.get(_RDF_ABOUT)
        frag_id = elem.get(_RDF_ID)
        node_id = elem.get(_RDF_NODEID)
        if sum(x is not None for x in (about, frag_id, node_id)) > 1:
            raise ParseError(
                f"<{_display(elem.tag)}> mixes rdf:about/rdf:ID/rdf:nodeID"
            )
        if about is not None:
            if not about and base is None:
                raise ParseError("empty rdf:about requires a base IRI")
            subject = self._resolve(about, base)
        elif frag_id is not None:
            if base is None:
                raise ParseError("rdf:ID requires a base IRI")
            subject = self._resolve("#" + frag_id, base)
        elif node_id is not None:
            subject = bnode(node_id)
        else:
            subject = self._fresh()

        tag_iri = _expand(elem.tag)
        if elem.tag != _RDF_DESCRIPTION:
            self.triples.append(Triple(subject, iri(_RDF_TYPE), iri(tag_iri)))

        for name, value in elem.attrib.items():
            if name in (_RDF_ABOUT, _RDF_ID, _RDF_NODEID, _XML_LANG, _XML_BASE, _XML_SPACE):
                continue
            if name == _RDF_TYPE_ATTR:
                self.triples.append(
                    Triple(subject, iri(_RDF_TYPE), self._resolve(value, base))
                )
                continue
            if name.startswith(_RDF):
                raise UnsupportedConstructError(
                    f"attribute rdf:{_display(name)} on node element <{_display(elem.tag)}>"
                )
            if name.startswith("{"):
                prop = _expand(name)
            else:
                raise UnsupportedConstructError(
                    f"un-namespaced attribute {name!r} on <{_display(elem.tag)}>"
                )
            self.triples.append(Triple(subject, iri(prop), literal(value, language=lang)))

        for child in elem:
            self.read_property(child, subject, base, lang)
        if elem.text and elem.text.strip():
            raise ParseError(f"unexpected text inside node element <{_display(elem.tag)}>")
        return subject

    def read_property(
        self, elem: ET.Element, subject: TermValue, base: str | None, lang: str | None
    ) -> None:
        base, lang = self._scoped(elem, base, lang)
        if elem.tag == _RDF_LI:
            raise UnsupportedConstructError("container membership property rdf:li")
        predicate = iri(_expand(elem.tag))
        if _RDF_ID in elem.attrib:
            raise UnsupportedConstructError(
                f"reification via rdf:ID on property element <{_display(elem.tag)}>"
            )
        parse_type = elem.get(_RDF_PARSETYPE)
        resource = elem.get(_RDF_RESOURCE)
        node_id = elem.get(_RDF_NODEID)
        datatype = elem.get(_RDF_DATATYPE)
        extra = [
            n for n in elem.attrib
            if n not in (_RDF_PARSETYPE, _RDF_RESOURCE, _RDF_NODEID, _RDF_DATATYPE,
                         _XML_LANG, _XML_BASE, _XML_SPACE)
        ]
        if extra:
            raise UnsupportedConstructError(
                f"attribute {_display(extra[0])!r} on property element <{_display(elem.tag)}>"
            )
        children = list(elem)
        text = elem.text or ""

        if parse_type is not None:
            if parse_type != "Resource":
                raise UnsupportedConstructError(
                    f'rdf:parseType="{parse_type}" on <{_display(elem.tag)}>'
                )
            inner = self._fresh()
            self.triples.append(Triple(subject, predicate, inner))
            for child in children:
                self.read_property(child, inner, base, lang)
            if text.strip():
                raise ParseError(
                    f"unexpected text inside parseType=Resource <{_display(elem.tag)}>"
                )
            return
        if resource is not None:
            if children or text.strip():
                raise ParseError(
                    f"rdf:resource property <{_display(elem.tag)}> must be empty"
                )
            self.triples.append(Triple(subject, predicate, self._resolve(resource, base)))
            return
        if node_id is not None:
            if children or text.strip():
                raise ParseError(
                    f"rdf:nodeID property <{_display(elem.tag)}> must be empty"
                )
            self.triples.append(Triple(subject, predicate, bnode(node_id)))
            return
        if children:
            if len(children) > 1:
                raise ParseError(
                    f"property element <{_display(elem.tag)}> has multiple node children"
                )
            if text.strip() or (children[0].tail or "").strip():
                raise ParseError(
                    f"mixed content in property element <{_display(elem.tag)}>"
                )
            obj = self.read_node(children[0], base, lang)
            self.triples.append(Triple(subject, predicate, obj))
            return
        if datatype is not None:
            self.triples.append(Triple(subject, predicate, literal(text, datatype=datatype)))
            return
        self.triples.append(Triple(subject, predicate, literal(text, language=lang)))


def parse_rdfxml(data: bytes, base: str | None = None) -> Graph:
    try:
        data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"document is not valid UTF-8: {exc.reason}") from exc
    prefixes: dict[str, str] = {}
    try:
        events = ET.iterparse(io.BytesIO(data), events=("start-ns", "start"))
        root: ET.Element | None = None
        for event, payload in events:
            if event == "start-ns":
                prefix, ns_iri = payload
                prefixes[prefix] = ns_iri
            elif root is None:
                root = payload
        # Drain to complete the tree.
        root = getattr(events, "root", root)
    except ET.ParseError as exc:
        line, col = exc.position if exc.position else (None, None)
        raise ParseError(f"XML syntax error: {exc.msg.split(':')[0]}", line, col) from exc
    if root is None:
        raise ParseError("empty XML document")

    reader = _RdfXmlReader(base)
    base_scope, lang_scope = reader._scoped(root, base, None)
    if root.tag == _RDF_RDF:
        for child in root:
            reader.read_node(child, base_scope, lang_scope)
    else:
        reader.read_node(root, base_scope, lang_scope)
    return Graph(reader.triples, base_iri=base, prefix_map=prefixes)
