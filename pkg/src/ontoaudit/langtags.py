"""BCP 47 language tags: syntactic well-formedness, normalization, identity.

Well-formedness is judged against the BCP 47 ABNF only; there is no IANA
registry lookup.  Two tags are the same language iff every normalized
subtag matches, so ``pt`` and ``pt-BR`` are distinct languages.  Ill-formed
tags keep their raw spelling and compare by it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["LanguageTag", "parse_tag", "same_language", "UNTAGGED", "UNTAGGED_KEY"]

# Reserved key for literals without a language tag; ':' cannot occur in any
# language tag produced by an RDF serialization, so this never collides.
UNTAGGED_KEY = "und:untagged"

_IRREGULAR = {
    "en-gb-oed", "i-ami", "i-bnn", "i-default", "i-enochian", "i-hak",
    "i-klingon", "i-lux", "i-mingo", "i-navajo", "i-pwn", "i-tao", "i-tay",
    "i-tsu", "sgn-be-fr", "sgn-be-nl", "sgn-ch-de",
}
_REGULAR = {
    "art-lojban", "cel-gaulish", "no-bok", "no-nyn", "zh-guoyu", "zh-hakka",
    "zh-min", "zh-min-nan", "zh-xiang",
}
_GRANDFATHERED = _IRREGULAR | _REGULAR


def _is_alpha(s: str) -> bool:
    return s.isascii() and s.isalpha()


def _is_digit(s: str) -> bool:
    return s.isascii() and s.isdigit()


def _is_alnum(s: str) -> bool:
    return s.isascii() and s.isalnum()


@dataclass(frozen=True, slots=True)
class LanguageTag:
    """A parsed language tag; equality and hashing use normalized subtags."""

    raw: str
    well_formed: bool
    language: str = ""
    extlang: tuple[str, ...] = ()
    script: str = ""
    region: str = ""
    variants: tuple[str, ...] = ()
    remainder: str = ""  # extensions and private-use subtags, lowercased
    _key: str = field(default="", repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_key", self._compute_key())

    def _compute_key(self) -> str:
        if not self.well_formed:
            return self.raw
        parts = [self.language, *self.extlang]
        if self.script:
            parts.append(self.script)
        if self.region:
            parts.append(self.region)
        parts.extend(self.variants)
        if self.remainder:
            parts.append(self.remainder)
        return "-".join(parts)

    @property
    def normalized(self) -> str:
        """Canonical spelling; for ill-formed tags, the raw string."""
        return self._key

    @property
    def is_untagged(self) -> bool:
        return self.raw == UNTAGGED_KEY

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LanguageTag):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        return self.normalized


UNTAGGED = LanguageTag(raw=UNTAGGED_KEY, well_formed=False)


def _ill_formed(raw: str) -> LanguageTag:
    return LanguageTag(raw=raw, well_formed=False)


def parse_tag(raw: str) -> LanguageTag:
    """Parse a tag; ill-formed input yields well_formed=False, never an error.

    Case is normalized per BCP 47 convention: language lowercase, script
    title case, region uppercase, everything else lowercase.
    """
    if not raw:
        raise ValueError("language tag must be non-empty")
    lowered = raw.lower()
    if lowered in _GRANDFATHERED:
        # Kept whole: grandfathered tags have no subtag structure to split.
        return LanguageTag(raw=raw, well_formed=True, language=lowered)
    subtags = lowered.split("-")
    if any(not s for s in subtags):
        return _ill_formed(raw)

    idx = 0
    language = ""
    extlang: list[str] = []
    script = ""
    region = ""
    variants: list[str] = []
    rest: list[str] = []

    first = subtags[0]
    if first == "x":
        # Entirely private-use tag.
        priv = _parse_privateuse(subtags, 0)
        if priv is None:
            return _ill_formed(raw)
        return LanguageTag(raw=raw, well_formed=True, language="", remainder=priv)
    if _is_alpha(first) and 2 <= len(first) <= 3:
        language = first
        idx = 1
        while idx < len(subtags) and len(extlang) < 3 and len(subtags[idx]) == 3 and _is_alpha(subtags[idx]):
            extlang.append(subtags[idx])
            idx += 1
    elif _is_alpha(first) and 4 <= len(first) <= 8:
        language = first
        idx = 1
    else:
        return _ill_formed(raw)

    if idx < len(subtags) and len(subtags[idx]) == 4 and _is_alpha(subtags[idx]):
        script = subtags[idx].title()
        idx += 1
    if idx < len(subtags) and (
        (len(subtags[idx]) == 2 and _is_alpha(subtags[idx]))
        or (len(subtags[idx]) == 3 and _is_digit(subtags[idx]))
    ):
        region = subtags[idx].upper()
        idx += 1
    while idx < len(subtags):
        s = subtags[idx]
        if (5 <= len(s) <= 8 and _is_alnum(s)) or (
            len(s) == 4 and s[0].isdigit() and _is_alnum(s)
        ):
            variants.append(s)
            idx += 1
        else:
            break
    # Extensions: singleton (not x) followed by 2-8 alphanumeric subtags.
    while idx < len(subtags) and len(subtags[idx]) == 1 and subtags[idx] != "x":
        if not _is_alnum(subtags[idx]):
            return _ill_formed(raw)
        ext = [subtags[idx]]
        idx += 1
        n = 0
        while idx < len(subtags) and 2 <= len(subtags[idx]) <= 8 and _is_alnum(subtags[idx]):
            ext.append(subtags[idx])
            idx += 1
            n += 1
        if n == 0:
            return _ill_formed(raw)
        rest.append("-".join(ext))
    if idx < len(subtags):
        if subtags[idx] != "x":
            return _ill_formed(raw)
        priv = _parse_privateuse(subtags, idx)
        if priv is None:
            return _ill_formed(raw)
        rest.append(priv)
        idx = len(subtags)

    return LanguageTag(
        raw=raw,
        well_formed=True,
        language=language,
        extlang=tuple(extlang),
        script=script,
        region=region,
        variants=tuple(variants),
        remainder="-".join(rest),
    )


def _parse_privateuse(subtags: list[str], idx: int) -> str | None:
    if subtags[idx] != "x" or idx + 1 >= len(subtags):
        return None
    tail = subtags[idx + 1 :]
    if all(1 <= len(s) <= 8 and _is_alnum(s) for s in tail):
        return "-".join(["x", *tail])
    return None


def same_language(a: LanguageTag, b: LanguageTag) -> bool:
    """Full-tag identity; no subtag fallback (pt-BR never folds into pt)."""
    return a == b
