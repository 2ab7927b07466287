"""Normalized cited-reference identities.

A cited reference arrives as a single comma-separated string, e.g.

    BALTIMORE D, 1970, NATURE, V226, P1209

Segments are mapped positionally (author, year, source); segments of the
form ``V<digits>`` / ``P<digits>`` are taken as volume / first page wherever
they occur. Anything else (DOIs, trailing junk) survives only in ``raw``.
Two keys are equal when their normalized component tuples are equal; the
raw spelling never takes part in equality or hashing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

_WS_RE = re.compile(r"\s+")
_YEAR_RE = re.compile(r"^\d{4}$")
_VOLUME_RE = re.compile(r"^V(\d+)$")
_PAGE_RE = re.compile(r"^P(\d+)$")


def normalize_text(text: str) -> str:
    """Uppercase and collapse runs of whitespace. Idempotent."""
    return _WS_RE.sub(" ", text).strip().upper()


@dataclass(frozen=True)
class RefKey:
    """Identity of one cited reference.

    Equality and hashing use only the normalized components; ``raw``
    preserves the original string for provenance and caching.
    """

    author: str
    year: Optional[int] = None
    source_abbrev: Optional[str] = None
    volume: Optional[int] = None
    first_page: Optional[int] = None
    raw: str = field(default="", compare=False)

    def canonical(self) -> str:
        """Canonical spelling rebuilt from the components.

        Used as the deterministic sort key for rankings and pair ordering:
        unlike ``raw`` it is identical for equal keys, whatever spacing or
        casing the source data used.
        """
        parts = [self.author]
        if self.year is not None:
            parts.append(str(self.year))
        if self.source_abbrev is not None:
            parts.append(self.source_abbrev)
        if self.volume is not None:
            parts.append(f"V{self.volume}")
        if self.first_page is not None:
            parts.append(f"P{self.first_page}")
        return ", ".join(parts)

    def sort_key(self) -> str:
        return self.canonical()


def parse_cited_ref(raw: str) -> RefKey:
    """Parse one cited-reference string into a RefKey.

    Never raises: a string with no recognizable components yields a key
    whose author is the whole normalized string.
    """
    segments = [normalize_text(part) for part in raw.split(",")]
    non_empty = [seg for seg in segments if seg]
    if not non_empty:
        return RefKey(author=normalize_text(raw), raw=raw)

    author = segments[0] if segments[0] else non_empty[0]
    year: Optional[int] = None
    source: Optional[str] = None
    volume: Optional[int] = None
    page: Optional[int] = None

    for pos, seg in enumerate(segments[1:], start=1):
        if not seg:
            continue
        m = _VOLUME_RE.match(seg)
        if m:
            if volume is None:
                volume = int(m.group(1))
            continue
        m = _PAGE_RE.match(seg)
        if m:
            if page is None:
                page = int(m.group(1))
            continue
        if pos == 1 and _YEAR_RE.match(seg):
            year = int(seg)
        elif pos == 2:
            source = seg
        # other positions: unparseable, kept only in raw

    return RefKey(
        author=author,
        year=year,
        source_abbrev=source,
        volume=volume,
        first_page=page,
        raw=raw,
    )
