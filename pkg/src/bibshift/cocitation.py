"""Per-year citation counts, co-citation counts, and core-reference sets.

Counting is per citing paper: a paper contributes at most 1 to a
reference's citation count and at most 1 to any pair's co-citation count,
however often the raw record repeated the string. A reference is *core*
for a year under a threshold pair when its citation count reaches
``cite_min`` and it is co-cited at least ``cocite_min`` times with some
other reference that itself reaches ``cite_min``.
"""
from __future__ import annotations

import enum
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .refkey import RefKey
from .records import YearSlice

RefPair = tuple[RefKey, RefKey]


@dataclass(frozen=True)
class ThresholdPair:
    """Citation / co-citation thresholds, written ``cite/cocite`` (e.g. 15/11)."""

    cite_min: int
    cocite_min: int

    def __post_init__(self):
        if self.cite_min < 1 or self.cocite_min < 1:
            raise ValueError(f"thresholds must be >= 1, got {self}")
        if self.cocite_min > self.cite_min:
            # A pair count can never exceed either member's citation count,
            # so such a pair behaves like cocite_min == cite_min.
            warnings.warn(
                f"cocite_min {self.cocite_min} exceeds cite_min {self.cite_min}; "
                "the co-citation threshold can never bind above the citation count",
                stacklevel=2,
            )

    def __str__(self) -> str:
        return f"{self.cite_min}/{self.cocite_min}"

    @classmethod
    def parse(cls, text: str) -> "ThresholdPair":
        cite, _, cocite = text.partition("/")
        try:
            return cls(cite_min=int(cite), cocite_min=int(cocite))
        except ValueError as exc:
            raise ValueError(f"cannot parse threshold pair {text!r} (want N/M)") from exc


@dataclass(frozen=True)
class CoreRefSet:
    year: int
    thresholds: ThresholdPair
    members: frozenset[RefKey]

    def __len__(self) -> int:
        return len(self.members)


class RankMode(enum.Enum):
    CITED = "cited"
    COCITED = "cocited"


def citation_counts(sl: YearSlice) -> dict[RefKey, int]:
    """Number of distinct papers in the slice citing each reference."""
    counts: Counter[RefKey] = Counter()
    for record in sl.records:
        counts.update(record.cited_refs)
    return dict(counts)


def pair_key(a: RefKey, b: RefKey) -> RefPair:
    """Canonical unordered-pair key: members sorted by canonical spelling."""
    return (a, b) if a.sort_key() <= b.sort_key() else (b, a)


def cocitation_counts(
    sl: YearSlice, candidates: Iterable[RefKey]
) -> dict[RefPair, int]:
    """Number of papers citing both members, for pairs drawn from
    ``candidates``. Pairs never cited together are omitted."""
    candidate_set = frozenset(candidates)
    counts: Counter[RefPair] = Counter()
    for record in sl.records:
        cited = sorted(record.cited_refs & candidate_set, key=RefKey.sort_key)
        counts.update(combinations(cited, 2))
    return dict(counts)


def core_references(sl: YearSlice, thresholds: ThresholdPair) -> CoreRefSet:
    """Core references of one year slice under one threshold pair.

    An empty result is a legitimate outcome for sparse years.
    """
    counts = citation_counts(sl)
    qualifying = {ref for ref, n in counts.items() if n >= thresholds.cite_min}
    pairs = cocitation_counts(sl, qualifying)
    members = {
        ref
        for pair, n in pairs.items()
        if n >= thresholds.cocite_min
        for ref in pair
    }
    return CoreRefSet(year=sl.year, thresholds=thresholds, members=frozenset(members))


def distinct_ref_count(sl: YearSlice) -> int:
    refs: set[RefKey] = set()
    for record in sl.records:
        refs.update(record.cited_refs)
    return len(refs)


def top_ranked(sl: YearSlice, k: int, mode: RankMode):
    """Top-k references (CITED) or reference pairs (COCITED) by count,
    descending; ties broken by ascending canonical spelling."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if mode is RankMode.CITED:
        counts = citation_counts(sl)
        ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0].sort_key()))
    else:
        pairs = cocitation_counts(sl, citation_counts(sl))
        ranked = sorted(
            pairs.items(),
            key=lambda item: (-item[1], item[0][0].sort_key(), item[0][1].sort_key()),
        )
    return ranked[:k]
