"""Title-word analysis: document frequencies, new-word detection, co-word
cosine pairs, and stem-anchored phrase trends.

Tokenization case-folds, splits on any non-alphanumeric character, and
drops pure-digit and single-character tokens plus stop words. Counting is
binary per record: a title contributes at most 1 to a term's document
frequency no matter how often it repeats the word. Percent values use the
full slice size as denominator, including records whose titles tokenize
to nothing.

Phrase trends deliberately use the raw ordered token sequence (stop words
kept) so that adjacency is judged on the title as written.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Optional

from .records import Corpus, YearSlice

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_DIGITS_RE = re.compile(r"\d+")

TermPair = tuple[str, str]


@dataclass(frozen=True)
class StopWordList:
    words: frozenset[str]  # stored case-folded
    source_path: str

    def __contains__(self, token: str) -> bool:
        return token.casefold() in self.words

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class TermStats:
    term: str
    year: int
    doc_freq: int
    percent: float


@dataclass(frozen=True)
class CoWordPair:
    term_a: str  # lexicographically first member
    term_b: str
    co_doc_freq: int
    cosine: float
    percent: Optional[float] = None  # later-year percent, set by novelty queries


@dataclass(frozen=True)
class PhrasePoint:
    year: int
    doc_freq: int
    percent: float


def parse_stopwords(lines, source_path: str) -> StopWordList:
    words = set()
    for line in lines:
        token = line.strip()
        if not token or token.startswith("#"):
            continue
        words.add(token.casefold())
    return StopWordList(words=frozenset(words), source_path=source_path)


def load_stopwords(path) -> StopWordList:
    with open(path, encoding="utf-8") as fh:
        return parse_stopwords(fh, source_path=str(path))


def default_stopwords() -> StopWordList:
    text = resources.files("bibshift").joinpath("data/stopwords_en.txt").read_text("utf-8")
    return parse_stopwords(text.splitlines(), source_path="<builtin:en>")


def title_token_sequence(title: str) -> tuple[str, ...]:
    """Ordered case-folded tokens with no filtering; adjacency-faithful."""
    return tuple(m.group(0).casefold() for m in _TOKEN_RE.finditer(title))


def tokenize_title(title: str, stop: StopWordList) -> frozenset[str]:
    """Distinct analysis tokens of one title."""
    kept = set()
    for token in title_token_sequence(title):
        if len(token) < 2 or _DIGITS_RE.fullmatch(token):
            continue
        if token in stop:
            continue
        kept.add(token)
    return frozenset(kept)


def _doc_freq_map(sl: YearSlice, stop: StopWordList) -> Counter:
    counts: Counter[str] = Counter()
    for record in sl.records:
        counts.update(tokenize_title(record.title, stop))
    return counts


def doc_frequencies(sl: YearSlice, stop: StopWordList) -> list[TermStats]:
    """Per-term record counts, most frequent first (ties alphabetical)."""
    counts = _doc_freq_map(sl, stop)
    total = len(sl)
    stats = [
        TermStats(term=term, year=sl.year, doc_freq=df, percent=100.0 * df / total)
        for term, df in counts.items()
    ]
    stats.sort(key=lambda s: (-s.doc_freq, s.term))
    return stats


def new_terms(
    former: YearSlice, later: YearSlice, stop: StopWordList, min_percent: float
) -> list[TermStats]:
    """Later-year terms absent from the former year, at or above
    ``min_percent`` of the later slice; most frequent first."""
    if min_percent < 0:
        raise ValueError(f"min_percent must be >= 0, got {min_percent}")
    former_terms = set(_doc_freq_map(former, stop))
    return [
        s
        for s in doc_frequencies(later, stop)
        if s.percent >= min_percent and s.term not in former_terms
    ]


def _co_doc_freq_map(sl: YearSlice, stop: StopWordList) -> Counter:
    counts: Counter[TermPair] = Counter()
    for record in sl.records:
        counts.update(combinations(sorted(tokenize_title(record.title, stop)), 2))
    return counts


def cosine_pairs(
    sl: YearSlice, stop: StopWordList, min_cosine: float
) -> list[CoWordPair]:
    """Co-occurring term pairs with cosine >= min_cosine, strongest first."""
    if not 0 <= min_cosine <= 1:
        raise ValueError(f"min_cosine must be in [0,1], got {min_cosine}")
    df = _doc_freq_map(sl, stop)
    pairs = [
        CoWordPair(term_a=a, term_b=b, co_doc_freq=co,
                   cosine=co / math.sqrt(df[a] * df[b]))
        for (a, b), co in _co_doc_freq_map(sl, stop).items()
    ]
    qualifying = [p for p in pairs if p.cosine >= min_cosine]
    qualifying.sort(key=lambda p: (-p.cosine, p.term_a, p.term_b))
    return qualifying


def new_coword_pairs(
    former: YearSlice,
    later: YearSlice,
    stop: StopWordList,
    min_cosine: float,
    min_percent: float,
) -> list[CoWordPair]:
    """Later-year pairs never co-occurring in the former year (members may
    individually exist earlier), meeting both thresholds; most frequent
    first. Percent is the later-year pair document frequency share."""
    if min_percent < 0:
        raise ValueError(f"min_percent must be >= 0, got {min_percent}")
    former_pairs = set(_co_doc_freq_map(former, stop))
    total = len(later)
    fresh = [
        CoWordPair(term_a=p.term_a, term_b=p.term_b, co_doc_freq=p.co_doc_freq,
                   cosine=p.cosine, percent=100.0 * p.co_doc_freq / total)
        for p in cosine_pairs(later, stop, min_cosine)
        if (p.term_a, p.term_b) not in former_pairs
    ]
    qualifying = [p for p in fresh if p.percent >= min_percent]
    qualifying.sort(key=lambda p: (-p.co_doc_freq, p.term_a, p.term_b))
    return qualifying


def phrase_trend(corpus: Corpus, head: str, stem_prefix: str) -> list[PhrasePoint]:
    """Per-year share of records whose title contains ``head`` immediately
    followed by a token starting with ``stem_prefix``."""
    if not head or not stem_prefix:
        raise ValueError("head and stem_prefix must be non-empty")
    head = head.casefold()
    stem_prefix = stem_prefix.casefold()
    points = []
    for year in corpus.years():
        sl = corpus.slice(year)
        hits = 0
        for record in sl.records:
            seq = title_token_sequence(record.title)
            if any(
                seq[i] == head and seq[i + 1].startswith(stem_prefix)
                for i in range(len(seq) - 1)
            ):
                hits += 1
        total = len(sl)
        percent = 100.0 * hits / total if total else 0.0
        points.append(PhrasePoint(year=year, doc_freq=hits, percent=percent))
    return points
