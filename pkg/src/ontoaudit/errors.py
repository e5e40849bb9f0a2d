"""Exception hierarchy shared across the package."""

from __future__ import annotations


class OntoAuditError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OntoAuditError):
    """Malformed syntax in an RDF document; carries a source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(message + where)


class UnsupportedConstructError(ParseError):
    """A construct outside the supported RDF/XML subset; never dropped silently."""


class EncodingError(ParseError):
    """Input bytes are not valid UTF-8."""


class UndecidableFormatError(OntoAuditError):
    """No usable signal to decide the serialization format."""


class DocumentTooLargeError(OntoAuditError):
    """Document exceeds the in-memory size limit; use the streaming scanner."""


class DegenerateCoverageError(OntoAuditError):
    """Completeness is undefined because coverage is zero."""


class DegenerateProfileError(OntoAuditError):
    """Primary language is undefined for an empty completeness profile."""


class EmptyInputError(OntoAuditError):
    """An aggregate or report was requested over zero results."""


class InvalidSpecError(OntoAuditError):
    """A corpus generation spec failed validation."""


class ConfigError(OntoAuditError):
    """Bad run configuration (flags, config file, or environment)."""


class TransportError(OntoAuditError):
    """HTTP transport failed before any response was received."""


class MalformedPayloadError(OntoAuditError):
    """A repository API returned a payload the client cannot interpret."""
