from __future__ import annotations

import io

import pytest

from ontoaudit.errors import DocumentTooLargeError, UndecidableFormatError
from ontoaudit.formats import NTRIPLES, RDFXML, TURTLE, detect_format, parse_document, scan_stream


def test_media_type_wins_over_extension():
    assert detect_format("data.nt", "application/rdf+xml", b"@prefix x:") == RDFXML


def test_extension_wins_over_sniffing():
    assert detect_format("data.nt", None, b"@prefix x: <http://x/> .") == NTRIPLES
    assert detect_format("onto.owl") == RDFXML
    assert detect_format("vocab.ttl") == TURTLE


def test_content_sniffing_rules():
    assert detect_format(head=b'<?xml version="1.0"?>') == RDFXML
    assert detect_format(head=b"<rdf:RDF xmlns=...") == RDFXML
    assert detect_format(head=b"@prefix ontolex: <http://...") == TURTLE
    assert detect_format(head=b"PREFIX ex: <http://x/>") == TURTLE
    assert detect_format(head=b"<http://x/s> <http://x/p> <http://x/o> .") == NTRIPLES


def test_media_type_parameters_ignored():
    assert detect_format(media_type="text/turtle; charset=utf-8") == TURTLE


def test_undecidable_without_signals():
    with pytest.raises(UndecidableFormatError):
        detect_format()
    with pytest.raises(UndecidableFormatError):
        detect_format(filename="mystery.bin", media_type="application/octet-stream", head=b"")


def test_parse_document_dispatch_consistency():
    nt = b'<http://x/s> <http://x/p> "v"@en .\n'
    as_nt = parse_document(nt, NTRIPLES)
    as_ttl = parse_document(nt, TURTLE)
    assert as_nt == as_ttl


def test_document_size_limit():
    with pytest.raises(DocumentTooLargeError):
        parse_document(b"x" * 64, NTRIPLES, max_bytes=16)


def test_scan_stream_requires_ntriples():
    with pytest.raises(ValueError):
        scan_stream(io.BytesIO(b""), TURTLE, lambda t: None)


def test_scan_stream_and_parse_agree_on_count():
    nt = b"\n".join(
        b'<http://x/s%d> <http://x/p> "%d" .' % (i, i) for i in range(50)
    ) + b"\n"
    count = 0

    def bump(_t):
        nonlocal count
        count += 1

    summary = scan_stream(io.BytesIO(nt), NTRIPLES, bump)
    assert summary.count == count == len(parse_document(nt, NTRIPLES))
