from __future__ import annotations

import io

import pytest

from ontoaudit.errors import EncodingError, ParseError
from ontoaudit.model import Triple, iri, literal
from ontoaudit.ntriples import parse_ntriples, scan_ntriples, serialize_graph
from ontoaudit.vocab import XSD_INTEGER

SIMPLE = b"""# a comment line
<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> .
<http://ex.org/s> <http://ex.org/p> "plain" .
<http://ex.org/s> <http://ex.org/p> "tagged"@en-GB .
<http://ex.org/s> <http://ex.org/p> "7"^^<http://www.w3.org/2001/XMLSchema#integer> .
_:b1 <http://ex.org/p> _:b2 .
"""


def test_parse_basic_forms():
    g = parse_ntriples(SIMPLE)
    assert len(g) == 5
    assert Triple(iri("http://ex.org/s"), iri("http://ex.org/p"), literal("tagged", language="en-GB")) in g
    assert Triple(iri("http://ex.org/s"), iri("http://ex.org/p"), literal("7", datatype=XSD_INTEGER)) in g


def test_duplicate_triples_stored_once():
    data = b'<http://x/s> <http://x/p> "v" .\n<http://x/s> <http://x/p> "v" .\n'
    assert len(parse_ntriples(data)) == 1


def test_empty_document_parses_to_empty_graph():
    assert len(parse_ntriples(b"")) == 0
    assert len(parse_ntriples(b"\n# nothing here\n")) == 0


def test_string_escapes_roundtrip():
    data = b'<http://x/s> <http://x/p> "line\\nbreak \\"quoted\\" tab\\t\\\\ \\u00E9" .\n'
    g = parse_ntriples(data)
    (t,) = g.sorted_triples()
    assert t.object.value == 'line\nbreak "quoted" tab\t\\ é'
    assert parse_ntriples(serialize_graph(g).encode()) == g


def test_malformed_line_reports_position():
    with pytest.raises(ParseError) as err:
        parse_ntriples(b'<http://x/s> <http://x/p> "open .\n')
    assert "line 1" in str(err.value)


def test_missing_dot_rejected():
    with pytest.raises(ParseError):
        parse_ntriples(b'<http://x/s> <http://x/p> "v"\n')


def test_non_utf8_rejected():
    with pytest.raises(EncodingError):
        parse_ntriples(b"<http://x/s> <http://x/p> \xff .\n")


def test_scan_counts_and_agrees_with_parser():
    triples = []
    summary = scan_ntriples(io.BytesIO(SIMPLE), triples.append)
    assert summary.count == 5 and summary.error_count == 0
    assert set(triples) == set(parse_ntriples(SIMPLE).triples)


def test_scan_lenient_skips_bad_lines():
    data = SIMPLE + b"this is not a triple\n"
    summary = scan_ntriples(io.BytesIO(data), lambda t: None, lenient=True)
    assert summary.count == 5 and summary.error_count == 1


def test_scan_strict_aborts_on_first_bad_line():
    data = b"garbage\n<http://x/s> <http://x/p> <http://x/o> .\n"
    with pytest.raises(ParseError):
        scan_ntriples(io.BytesIO(data), lambda t: None)


def test_serialization_is_sorted_and_lf_terminated():
    g = parse_ntriples(SIMPLE)
    text = serialize_graph(g)
    lines = text.splitlines()
    assert lines == sorted(lines)
    assert text.endswith(".\n") and "\r" not in text


def test_langstring_datatype_requires_tag():
    bad = b'<http://x/s> <http://x/p> "v"^^<http://www.w3.org/1999/02/22-rdf-syntax-ns#langString> .\n'
    with pytest.raises(ParseError):
        parse_ntriples(bad)
