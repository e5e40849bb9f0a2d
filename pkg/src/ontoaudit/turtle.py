"""Turtle parser: prefixes, base, literals, blank nodes, collections.

Covers the Turtle constructs that occur in ontology documents in the wild:
@prefix/@base and their SPARQL spellings, prefixed names with local-name
escapes, all four string quoting forms, language tags, datatypes, numeric
and boolean shorthands, 'a', predicate/object lists, anonymous nodes,
blank-node property lists, and RDF collections.  Errors report line and
column and parsing is strict: nothing is dropped silently.
"""

from __future__ import annotations

import re
from urllib.parse import urljoin

from .errors import EncodingError, ParseError
from .model import Graph, TermValue, Triple, bnode, iri, literal
from .vocab import (
    RDF_FIRST,
    RDF_LANGSTRING,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
)

__all__ = ["parse_turtle"]

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_LANGTAG = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")
_NUMBER = re.compile(
    r"[+-]?(?:\d+\.\d*(?:[eE][+-]?\d+)?|\.?\d+(?:[eE][+-]?\d+)?|\.\d+)"
)
_PN_LOCAL_ESC = set("_~.-!$&'()*+,;=/?#@%")

_PN_BASE_RANGES = (
    (0x41, 0x5A), (0x61, 0x7A), (0xC0, 0xD6), (0xD8, 0xF6), (0xF8, 0x2FF),
    (0x370, 0x37D), (0x37F, 0x1FFF), (0x200C, 0x200D), (0x2070, 0x218F),
    (0x2C00, 0x2FEF), (0x3001, 0xD7FF), (0xF900, 0xFDCF), (0xFDF0, 0xFFFD),
    (0x10000, 0xEFFFF),
)

_STRING_ESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}


def _in_ranges(c: str, ranges: tuple[tuple[int, int], ...]) -> bool:
    o = ord(c)
    return any(lo <= o <= hi for lo, hi in ranges)


def _pn_chars_base(c: str) -> bool:
    return _in_ranges(c, _PN_BASE_RANGES)


def _pn_chars_u(c: str) -> bool:
    return c == "_" or _pn_chars_base(c)


def _pn_chars(c: str) -> bool:
    if _pn_chars_u(c) or c == "-" or c.isdigit() and c.isascii():
        return True
    o = ord(c)
    return o == 0xB7 or 0x300 <= o <= 0x36F or 0x203F <= o <= 0x2040


class _Tok:
    __slots__ = ("type", "value", "line", "col")

    def __init__(self, type_: str, value, line: int, col: int):
        self.type = type_
        self.value = value
        self.line = line
        self.col = col


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.n = len(text)
        self.line = 1
        self.col = 1

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col)

    def _advance(self, k: int = 1) -> None:
        for _ in range(k):
            if self.i < self.n and self.text[self.i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.i += 1

    def _peek(self, offset: int = 0) -> str:
        j = self.i + offset
        return self.text[j] if j < self.n else ""

    def _skip_ws_and_comments(self) -> None:
        while self.i < self.n:
            c = self.text[self.i]
            if c in " \t\r\n":
                self._advance()
            elif c == "#":
                while self.i < self.n and self.text[self.i] != "\n":
                    self._advance()
            else:
                return

    def next(self) -> _Tok:
        self._skip_ws_and_comments()
        line, col = self.line, self.col
        if self.i >= self.n:
            return _Tok("EOF", None, line, col)
        c = self.text[self.i]
        if c == "<":
            return _Tok("IRIREF", self._lex_iriref(), line, col)
        if c in "\"'":
            return _Tok("STRING", self._lex_string(), line, col)
        if c == "@":
            return self._lex_at(line, col)
        if c == "_" and self._peek(1) == ":":
            return _Tok("BNODE", self._lex_bnode_label(), line, col)
        if c in ";,[]()":
            self._advance()
            return _Tok(c, c, line, col)
        if c == "^" and self._peek(1) == "^":
            self._advance(2)
            return _Tok("^^", "^^", line, col)
        if c == ".":
            if self._peek(1).isdigit():
                return _Tok("NUMBER", self._lex_number(), line, col)
            self._advance()
            return _Tok(".", ".", line, col)
        if c.isdigit() or (c in "+-" and (self._peek(1).isdigit() or self._peek(1) == ".")):
            return _Tok("NUMBER", self._lex_number(), line, col)
        return self._lex_word_or_pname(line, col)

    def _lex_iriref(self) -> str:
        self._advance()  # '<'
        out: list[str] = []
        while True:
            if self.i >= self.n:
                raise self.error("unterminated IRI")
            c = self.text[self.i]
            if c == ">":
                self._advance()
                break
            if c == "\\":
                e = self._peek(1)
                if e == "u":
                    out.append(chr(int(self.text[self.i + 2 : self.i + 6], 16)))
                    self._advance(6)
                elif e == "U":
                    out.append(chr(int(self.text[self.i + 2 : self.i + 10], 16)))
                    self._advance(10)
                else:
                    raise self.error(f"invalid escape \\{e} in IRI")
                continue
            if c in ' "{}|^`' or ord(c) <= 0x20:
                raise self.error(f"invalid character {c!r} in IRI")
            out.append(c)
            self._advance()
        return "".join(out)

    def _lex_string(self) -> str:
        quote = self.text[self.i]
        long_form = self.text.startswith(quote * 3, self.i)
        terminator = quote * 3 if long_form else quote
        self._advance(3 if long_form else 1)
        out: list[str] = []
        while True:
            if self.i >= self.n:
                raise self.error("unterminated string literal")
            if self.text.startswith(terminator, self.i):
                self._advance(len(terminator))
                return "".join(out)
            c = self.text[self.i]
            if c == "\\":
                e = self._peek(1)
                if e in _STRING_ESCAPES:
                    out.append(_STRING_ESCAPES[e])
                    self._advance(2)
                elif e == "u":
                    out.append(chr(int(self.text[self.i + 2 : self.i + 6], 16)))
                    self._advance(6)
                elif e == "U":
                    out.append(chr(int(self.text[self.i + 2 : self.i + 10], 16)))
                    self._advance(10)
                else:
                    raise self.error(f"invalid string escape \\{e}")
                continue
            if not long_form and c in "\n\r":
                raise self.error("newline in single-line string")
            out.append(c)
            self._advance()

    def _lex_at(self, line: int, col: int) -> _Tok:
        self._advance()  # '@'
        j = self.i
        while j < self.n and (self.text[j].isalnum() and self.text[j].isascii() or self.text[j] == "-"):
            j += 1
        word = self.text[self.i : j]
        if word == "prefix":
            self._advance(len(word))
            return _Tok("@prefix", word, line, col)
        if word == "base":
            self._advance(len(word))
            return _Tok("@base", word, line, col)
        if not _LANGTAG.fullmatch(word):
            raise self.error(f"invalid language tag @{word}")
        self._advance(len(word))
        return _Tok("LANGTAG", word, line, col)

    def _lex_bnode_label(self) -> str:
        self._advance(2)  # '_:'
        start = self.i
        c = self._peek()
        if not (_pn_chars_u(c) or c.isdigit() and c.isascii()):
            raise self.error("invalid blank node label")
        self._advance()
        while self.i < self.n:
            c = self.text[self.i]
            if _pn_chars(c):
                self._advance()
            elif c == ".":
                # Dots are allowed inside a label but not at its end.
                k = self.i
                while k < self.n and self.text[k] == ".":
                    k += 1
                if k < self.n and _pn_chars(self.text[k]):
                    self._advance(k - self.i)
                else:
                    break
            else:
                break
        return self.text[start : self.i]

    def _lex_number(self) -> tuple[str, str]:
        m = _NUMBER.match(self.text, self.i)
        if not m:
            raise self.error("malformed numeric literal")
        lex = m.group(0)
        self._advance(len(lex))
        if "e" in lex or "E" in lex:
            dt = XSD_DOUBLE
        elif "." in lex:
            dt = XSD_DECIMAL
        else:
            dt = XSD_INTEGER
        return lex, dt

    def _lex_word_or_pname(self, line: int, col: int) -> _Tok:
        start = self.i
        c = self._peek()
        if c == ":":
            prefix = ""
        else:
            if not _pn_chars_base(c):
                raise self.error(f"unexpected character {c!r}")
            self._advance()
            while self.i < self.n:
                c = self.text[self.i]
                if _pn_chars(c):
                    self._advance()
                elif c == ".":
                    k = self.i
                    while k < self.n and self.text[k] == ".":
                        k += 1
                    if k < self.n and _pn_chars(self.text[k]):
                        self._advance(k - self.i)
                    else:
                        break
                else:
                    break
            word = self.text[start : self.i]
            if self._peek() != ":":
                if word == "a":
                    return _Tok("A", word, line, col)
                if word in ("true", "false"):
                    return _Tok("BOOLEAN", word, line, col)
                if word.lower() == "prefix":
                    return _Tok("PREFIX", word, line, col)
                if word.lower() == "base":
                    return _Tok("BASE", word, line, col)
                raise ParseError(f"unexpected token {word!r}", line, col)
            prefix = word
        self._advance()  # ':'
        local = self._lex_pn_local()
        return _Tok("PNAME", (prefix, local), line, col)

    def _lex_pn_local(self) -> str:
        out: list[str] = []
        first = True
        while self.i < self.n:
            c = self.text[self.i]
            if c == "\\":
                e = self._peek(1)
                if e in _PN_LOCAL_ESC:
                    out.append(e)
                    self._advance(2)
                    first = False
                    continue
                raise self.error(f"invalid local name escape \\{e}")
            if c == "%":
                h = self.text[self.i + 1 : self.i + 3]
                if len(h) == 2 and all(x in "0123456789abcdefABCDEF" for x in h):
                    out.append("%" + h)
                    self._advance(3)
                    first = False
                    continue
                raise self.error("invalid percent escape in local name")
            ok = (
                (_pn_chars_u(c) or c == ":" or c.isdigit() and c.isascii())
                if first
                else (_pn_chars(c) or c == ":")
            )
            if ok:
                out.append(c)
                self._advance()
                first = False
                continue
            if c == "." and not first:
                k = self.i
                while k < self.n and self.text[k] == ".":
                    k += 1
                nxt = self.text[k] if k < self.n else ""
                if nxt and (_pn_chars(nxt) or nxt in ":%\\"):
                    out.append("." * (k - self.i))
                    self._advance(k - self.i)
                    continue
            break
        return "".join(out)


class _TurtleParser:
    def __init__(self, text: str, base: str | None):
        self.lexer = _Lexer(text)
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []
        self._genid = 0
        self.tok = self.lexer.next()

    def _next(self) -> None:
        self.tok = self.lexer.next()

    def _expect(self, type_: str) -> _Tok:
        if self.tok.type != type_:
            raise ParseError(
                f"expected {type_}, found {self.tok.type}", self.tok.line, self.tok.col
            )
        t = self.tok
        self._next()
        return t

    def _fresh_bnode(self) -> TermValue:
        self._genid += 1
        return bnode(f"genid{self._genid}")

    def _resolve(self, ref: str, tok: _Tok) -> TermValue:
        if _SCHEME.match(ref):
            return iri(ref)
        if self.base is None:
            raise ParseError(f"relative IRI {ref!r} without a base", tok.line, tok.col)
        return iri(urljoin(self.base, ref))

    def _pname_iri(self, tok: _Tok) -> TermValue:
        prefix, local = tok.value
        if prefix not in self.prefixes:
            raise ParseError(f"undeclared prefix {prefix!r}", tok.line, tok.col)
        return iri(self.prefixes[prefix] + local)

    def parse(self) -> Graph:
        while self.tok.type != "EOF":
            if self.tok.type == "@prefix":
                self._next()
                name = self._expect("PNAME")
                prefix, local = name.value
                if local:
                    raise ParseError("prefix declaration must end with ':'", name.line, name.col)
                ref = self._expect("IRIREF")
                self.prefixes[prefix] = self._resolve(ref.value, ref).value
                self._expect(".")
            elif self.tok.type == "@base":
                self._next()
                ref = self._expect("IRIREF")
                self.base = self._resolve(ref.value, ref).value
                self._expect(".")
            elif self.tok.type == "PREFIX":
                self._next()
                name = self._expect("PNAME")
                prefix, local = name.value
                if local:
                    raise ParseError("prefix declaration must end with ':'", name.line, name.col)
                ref = self._expect("IRIREF")
                self.prefixes[prefix] = self._resolve(ref.value, ref).value
            elif self.tok.type == "BASE":
                self._next()
                ref = self._expect("IRIREF")
                self.base = self._resolve(ref.value, ref).value
            else:
                self._parse_triples()
                self._expect(".")
        return Graph(self.triples, base_iri=self.base, prefix_map=self.prefixes)

    def _parse_triples(self) -> None:
        if self.tok.type == "[":
            subject = self._parse_bnode_property_list()
            if self.tok.type != ".":
                self._parse_predicate_object_list(subject)
            return
        subject = self._parse_subject()
        self._parse_predicate_object_list(subject)

    def _parse_subject(self) -> TermValue:
        t = self.tok
        if t.type == "IRIREF":
            self._next()
            return self._resolve(t.value, t)
        if t.type == "PNAME":
            self._next()
            return self._pname_iri(t)
        if t.type == "BNODE":
            self._next()
            return bnode(t.value)
        if t.type == "(":
            return self._parse_collection()
        raise ParseError(f"bad subject: {t.type}", t.line, t.col)

    def _parse_predicate_object_list(self, subject: TermValue) -> None:
        while True:
            predicate = self._parse_verb()
            self._parse_object_list(subject, predicate)
            if self.tok.type == ";":
                while self.tok.type == ";":
                    self._next()
                if self.tok.type in (".", "]"):
                    return
                continue
            return

    def _parse_verb(self) -> TermValue:
        t = self.tok
        if t.type == "A":
            self._next()
            return iri(RDF_TYPE)
        if t.type == "IRIREF":
            self._next()
            return self._resolve(t.value, t)
        if t.type == "PNAME":
            self._next()
            return self._pname_iri(t)
        raise ParseError(f"bad predicate: {t.type}", t.line, t.col)

    def _parse_object_list(self, subject: TermValue, predicate: TermValue) -> None:
        while True:
            obj = self._parse_object()
            self.triples.append(Triple(subject, predicate, obj))
            if self.tok.type == ",":
                self._next()
                continue
            return

    def _parse_object(self) -> TermValue:
        t = self.tok
        if t.type == "IRIREF":
            self._next()
            return self._resolve(t.value, t)
        if t.type == "PNAME":
            self._next()
            return self._pname_iri(t)
        if t.type == "BNODE":
            self._next()
            return bnode(t.value)
        if t.type == "[":
            return self._parse_bnode_property_list()
        if t.type == "(":
            return self._parse_collection()
        if t.type == "STRING":
            return self._parse_rdf_literal()
        if t.type == "NUMBER":
            self._next()
            lex, dt = t.value
            return literal(lex, datatype=dt)
        if t.type == "BOOLEAN":
            self._next()
            return literal(t.value, datatype=XSD_BOOLEAN)
        raise ParseError(f"bad object: {t.type}", t.line, t.col)

    def _parse_rdf_literal(self) -> TermValue:
        t = self._expect("STRING")
        lex = t.value
        if self.tok.type == "LANGTAG":
            tag = self.tok.value
            self._next()
            return literal(lex, language=tag)
        if self.tok.type == "^^":
            self._next()
            dt_tok = self.tok
            if dt_tok.type == "IRIREF":
                self._next()
                dt = self._resolve(dt_tok.value, dt_tok).value
            elif dt_tok.type == "PNAME":
                self._next()
                dt = self._pname_iri(dt_tok).value
            else:
                raise ParseError("expected datatype IRI", dt_tok.line, dt_tok.col)
            if dt == RDF_LANGSTRING:
                raise ParseError(
                    "rdf:langString literal requires a language tag", t.line, t.col
                )
            return literal(lex, datatype=dt)
        return literal(lex)

    def _parse_bnode_property_list(self) -> TermValue:
        self._expect("[")
        node = self._fresh_bnode()
        if self.tok.type != "]":
            self._parse_predicate_object_list(node)
        self._expect("]")
        return node

    def _parse_collection(self) -> TermValue:
        self._expect("(")
        items: list[TermValue] = []
        while self.tok.type != ")":
            items.append(self._parse_object())
        self._expect(")")
        if not items:
            return iri(RDF_NIL)
        head = self._fresh_bnode()
        node = head
        for idx, item in enumerate(items):
            self.triples.append(Triple(node, iri(RDF_FIRST), item))
            if idx + 1 < len(items):
                nxt = self._fresh_bnode()
                self.triples.append(Triple(node, iri(RDF_REST), nxt))
                node = nxt
            else:
                self.triples.append(Triple(node, iri(RDF_REST), iri(RDF_NIL)))
        return head


def parse_turtle(data: bytes, base: str | None = None) -> Graph:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"document is not valid UTF-8: {exc.reason}") from exc
    if text.startswith("﻿"):
        text = text[1:]
    return _TurtleParser(text, base).parse()
