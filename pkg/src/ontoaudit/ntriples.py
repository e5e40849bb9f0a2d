"""N-Triples parsing, line-streaming scan, and canonical serialization.

Parsing is strict and position-reporting.  The scanner has a lenient mode
that counts and skips malformed lines, for dirty crawled dumps; it never
materializes the whole graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import BinaryIO, Callable, Iterable, Iterator

from .errors import EncodingError, ParseError
from .model import Graph, Triple, TermValue, bnode, iri, literal
from .vocab import RDF_LANGSTRING, XSD_STRING

__all__ = ["parse_ntriples", "scan_ntriples", "ScanSummary", "serialize_graph", "serialize_triple"]

_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

# Fast path for the overwhelmingly common shapes; the character-level
# parser below is the authority for anything this does not match.
_FAST_LINE = re.compile(
    r"^[ \t]*"
    r"(?P<s><[^<>\s\"{}|^`\\]*>|_:[^\s<>]+)[ \t]+"
    r"(?P<p><[^<>\s\"{}|^`\\]*>)[ \t]+"
    r"(?P<o><[^<>\s\"{}|^`\\]*>|_:[^\s<>]+|\"(?P<lex>[^\"\\]*)\""
    r"(?:@(?P<lang>[A-Za-z]+(?:-[A-Za-z0-9]+)*)|\^\^(?P<dt><[^<>\s\"{}|^`\\]*>))?)"
    r"[ \t]*\.[ \t]*(?:#.*)?$"
)

_BNODE_LABEL = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.\-]*$")


@dataclass(frozen=True)
class ScanSummary:
    count: int
    error_count: int


def _unescape(text: str, line_no: int) -> str:
    if "\\" not in text:
        return text
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= n:
            raise ParseError("dangling escape", line_no)
        e = text[i + 1]
        if e in _ESCAPES:
            out.append(_ESCAPES[e])
            i += 2
        elif e == "u":
            if i + 6 > n:
                raise ParseError("truncated \\u escape", line_no)
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
        elif e == "U":
            if i + 10 > n:
                raise ParseError("truncated \\U escape", line_no)
            out.append(chr(int(text[i + 2 : i + 10], 16)))
            i += 10
        else:
            raise ParseError(f"invalid escape \\{e}", line_no)
    return "".join(out)


class _LineParser:
    """Character-level parser for one physical N-Triples line."""

    def __init__(self, line: str, line_no: int):
        self.s = line
        self.i = 0
        self.n = len(line)
        self.line_no = line_no

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line_no, self.i + 1)

    def skip_ws(self) -> None:
        while self.i < self.n and self.s[self.i] in " \t":
            self.i += 1

    def at_end_or_comment(self) -> bool:
        return self.i >= self.n or self.s[self.i] == "#"

    def parse_iri(self) -> TermValue:
        if self.s[self.i] != "<":
            raise self.error("expected '<'")
        end = self.s.find(">", self.i + 1)
        while end != -1 and self.s[end - 1] == "\\":
            # '>' cannot be escaped in IRIREF, but '\' may precede via \u;
            # a literal backslash before '>' means a malformed IRI anyway.
            break
        if end == -1:
            raise self.error("unterminated IRI")
        raw = self.s[self.i + 1 : end]
        self.i = end + 1
        value = _unescape(raw, self.line_no)
        if not value or any(c in ' \t<>"{}|^`' or ord(c) <= 0x20 for c in value):
            raise ParseError(f"invalid IRI {value!r}", self.line_no)
        return iri(value)

    def parse_bnode(self) -> TermValue:
        if not self.s.startswith("_:", self.i):
            raise self.error("expected blank node")
        j = self.i + 2
        while j < self.n and self.s[j] not in " \t":
            j += 1
        label = self.s[self.i + 2 : j]
        if label.endswith("."):
            # Allow the statement-final dot to abut the label.
            label = label[:-1]
            j -= 1
        if not label or not _BNODE_LABEL.match(label) or label.endswith("."):
            raise ParseError(f"invalid blank node label {label!r}", self.line_no)
        self.i = j
        return bnode(label)

    def parse_literal(self) -> TermValue:
        if self.s[self.i] != '"':
            raise self.error("expected '\"'")
        j = self.i + 1
        while j < self.n:
            c = self.s[j]
            if c == "\\":
                j += 2
                continue
            if c == '"':
                break
            j += 1
        if j >= self.n:
            raise self.error("unterminated string literal")
        lex = _unescape(self.s[self.i + 1 : j], self.line_no)
        self.i = j + 1
        if self.i < self.n and self.s[self.i] == "@":
            j = self.i + 1
            while j < self.n and (self.s[j].isalnum() and self.s[j].isascii() or self.s[j] == "-"):
                j += 1
            tag = self.s[self.i + 1 : j]
            if not re.fullmatch(r"[A-Za-z]+(-[A-Za-z0-9]+)*", tag):
                raise ParseError(f"invalid language tag {tag!r}", self.line_no)
            self.i = j
            return literal(lex, language=tag)
        if self.s.startswith("^^", self.i):
            self.i += 2
            dt = self.parse_iri()
            if dt.value == RDF_LANGSTRING:
                raise ParseError("rdf:langString literal requires a language tag", self.line_no)
            return literal(lex, datatype=dt.value)
        return literal(lex)

    def parse_triple(self) -> Triple:
        self.skip_ws()
        c = self.s[self.i]
        if c == "<":
            subject = self.parse_iri()
        elif c == "_":
            subject = self.parse_bnode()
        else:
            raise self.error("subject must be an IRI or blank node")
        self.skip_ws()
        predicate = self.parse_iri()
        self.skip_ws()
        c = self.s[self.i] if self.i < self.n else ""
        if c == "<":
            obj = self.parse_iri()
        elif c == "_":
            obj = self.parse_bnode()
        elif c == '"':
            obj = self.parse_literal()
        else:
            raise self.error("object must be an IRI, blank node, or literal")
        self.skip_ws()
        if self.i >= self.n or self.s[self.i] != ".":
            raise self.error("expected '.' terminating the statement")
        self.i += 1
        self.skip_ws()
        if not self.at_end_or_comment():
            raise self.error("trailing content after '.'")
        return Triple(subject, predicate, obj)


def _term_from_fast(match_text: str, line_no: int) -> TermValue:
    if match_text.startswith("<"):
        value = _unescape(match_text[1:-1], line_no)
        return iri(value)
    label = match_text[2:]
    if not _BNODE_LABEL.match(label) or label.endswith("."):
        raise ParseError(f"invalid blank node label {label!r}", line_no)
    return bnode(label)


def _parse_line(line: str, line_no: int) -> Triple | None:
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    m = _FAST_LINE.match(line)
    if m:
        s = _term_from_fast(m.group("s"), line_no)
        p = _term_from_fast(m.group("p"), line_no)
        o_text = m.group("o")
        if o_text.startswith('"'):
            lex = _unescape(m.group("lex"), line_no)
            lang = m.group("lang")
            dt = m.group("dt")
            if lang:
                o = literal(lex, language=lang)
            elif dt:
                dt_iri = _unescape(dt[1:-1], line_no)
                if dt_iri == RDF_LANGSTRING:
                    raise ParseError(
                        "rdf:langString literal requires a language tag", line_no
                    )
                o = literal(lex, datatype=dt_iri)
            else:
                o = literal(lex)
        else:
            o = _term_from_fast(o_text, line_no)
        return Triple(s, p, o)
    return _LineParser(line, line_no).parse_triple()


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"document is not valid UTF-8: {exc.reason}") from exc


def parse_ntriples(data: bytes, base: str | None = None) -> Graph:
    """Parse a whole N-Triples document, strictly."""
    text = _decode(data)
    triples = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        t = _parse_line(line, line_no)
        if t is not None:
            triples.append(t)
    return Graph(triples, base_iri=base)


def _iter_lines(stream: BinaryIO) -> Iterator[bytes]:
    for raw in stream:
        yield raw


def scan_ntriples(
    stream: BinaryIO,
    callback: Callable[[Triple], None],
    *,
    lenient: bool = False,
) -> ScanSummary:
    """Invoke ``callback`` per well-formed triple without building a graph.

    In strict mode the first malformed line aborts with ParseError; in
    lenient mode malformed lines are counted and skipped.
    """
    count = 0
    errors = 0
    for line_no, raw in enumerate(_iter_lines(stream), start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            if lenient:
                errors += 1
                continue
            raise EncodingError(f"line is not valid UTF-8: {exc.reason}", line_no) from exc
        line = line.rstrip("\r\n")
        try:
            t = _parse_line(line, line_no)
        except ParseError:
            if lenient:
                errors += 1
                continue
            raise
        if t is not None:
            callback(t)
            count += 1
    return ScanSummary(count=count, error_count=errors)


def _escape(text: str) -> str:
    out = []
    for c in text:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\r":
            out.append("\\r")
        elif c == "\t":
            out.append("\\t")
        elif ord(c) < 0x20:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def serialize_term(term: TermValue) -> str:
    if term.is_iri:
        return f"<{term.value}>"
    if term.is_blank:
        return f"_:{term.value}"
    lex = _escape(term.value)
    if term.language:
        return f'"{lex}"@{term.language}'
    if term.datatype == XSD_STRING:
        return f'"{lex}"'
    return f'"{lex}"^^<{term.datatype}>'


def serialize_triple(t: Triple) -> str:
    return f"{serialize_term(t.subject)} {serialize_term(t.predicate)} {serialize_term(t.object)} ."


def serialize_graph(graph: Graph | Iterable[Triple]) -> str:
    """Canonical N-Triples text: sorted lines, LF endings, trailing newline."""
    triples = graph.triples if isinstance(graph, Graph) else graph
    lines = sorted(serialize_triple(t) for t in triples)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
