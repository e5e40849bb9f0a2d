"""Format detection and the single parse entry point for all serializations."""

from __future__ import annotations

import os
from typing import BinaryIO, Callable

from .errors import DocumentTooLargeError, UndecidableFormatError
from .model import Graph, Triple
from .ntriples import ScanSummary, parse_ntriples, scan_ntriples
from .rdfxml import parse_rdfxml
from .turtle import parse_turtle

__all__ = ["NTRIPLES", "TURTLE", "RDFXML", "detect_format", "parse_document", "scan_stream",
           "DEFAULT_MAX_DOCUMENT_BYTES"]

NTRIPLES = "ntriples"
TURTLE = "turtle"
RDFXML = "rdfxml"

DEFAULT_MAX_DOCUMENT_BYTES = 2 * 1024**3  # 2 GiB; larger inputs must stream

_MEDIA_TYPES = {
    "application/rdf+xml": RDFXML,
    "application/xml": RDFXML,
    "text/xml": RDFXML,
    "application/owl+xml": RDFXML,
    "text/turtle": TURTLE,
    "application/x-turtle": TURTLE,
    "application/turtle": TURTLE,
    "application/n-triples": NTRIPLES,
    "text/plain": NTRIPLES,
}

_EXTENSIONS = {
    ".nt": NTRIPLES,
    ".ntriples": NTRIPLES,
    ".ttl": TURTLE,
    ".turtle": TURTLE,
    ".rdf": RDFXML,
    ".rdfxml": RDFXML,
    ".owl": RDFXML,
    ".xml": RDFXML,
}

_PARSERS: dict[str, Callable[[bytes, str | None], Graph]] = {
    NTRIPLES: parse_ntriples,
    TURTLE: parse_turtle,
    RDFXML: parse_rdfxml,
}


def detect_format(
    filename: str | None = None,
    media_type: str | None = None,
    head: bytes | None = None,
) -> str:
    """Pick a format: media type wins over extension wins over sniffing."""
    if media_type:
        normalized = media_type.split(";", 1)[0].strip().lower()
        fmt = _MEDIA_TYPES.get(normalized)
        if fmt:
            return fmt
    if filename:
        ext = os.path.splitext(filename)[1].lower()
        fmt = _EXTENSIONS.get(ext)
        if fmt:
            return fmt
    if head:
        text = head.lstrip(b"\xef\xbb\xbf \t\r\n")
        if text.startswith(b"<?xml") or text.startswith(b"<rdf:RDF") or text.startswith(b"<RDF"):
            return RDFXML
        if text.startswith(b"@prefix") or text.startswith(b"@base") or text.startswith(
            b"PREFIX"
        ) or text.startswith(b"BASE"):
            return TURTLE
        if text:
            return NTRIPLES
    raise UndecidableFormatError(
        f"cannot determine format (filename={filename!r}, media_type={media_type!r})"
    )


def parse_document(
    data: bytes,
    format: str,
    base: str | None = None,
    max_bytes: int = DEFAULT_MAX_DOCUMENT_BYTES,
) -> Graph:
    """Parse one whole document, strictly, into an immutable Graph."""
    if len(data) > max_bytes:
        raise DocumentTooLargeError(
            f"document of {len(data)} bytes exceeds the {max_bytes}-byte limit; "
            "use scan_stream for N-Triples of this size"
        )
    try:
        parser = _PARSERS[format]
    except KeyError:
        raise ValueError(f"unknown format {format!r}") from None
    return parser(data, base)


def scan_stream(
    stream: BinaryIO,
    format: str,
    callback: Callable[[Triple], None],
    *,
    lenient: bool = False,
) -> ScanSummary:
    """Stream triples from a line-oriented document without materializing it."""
    if format != NTRIPLES:
        raise ValueError("streaming is only supported for the ntriples format")
    return scan_ntriples(stream, callback, lenient=lenient)
