"""Bibliographic record model, year-sliced corpus, and the corpus cache.

The cache is a line-delimited TSV: one record per line with columns
``record_id``, ``source``, ``year``, ``title``, ``cited_refs``. The last
column joins the raw cited-reference strings with ``|``; backslash escapes
(backslash, tab, newline, carriage return, ``#``, and ``|`` as ``\\p``) keep
every field tab-, separator-, and comment-safe, so a cache file round-trips
byte-identically. Lines starting with ``#`` are header/comment lines and are
skipped on read.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .refkey import RefKey, parse_cited_ref

CACHE_HEADER = "# bibshift-cache v1: record_id\tsource\tyear\ttitle\tcited_refs"


class Source(enum.Enum):
    CITATION_INDEX = "citation_index"
    MEDLINE = "medline"


@dataclass(frozen=True)
class BibRecord:
    """One bibliographic record from either export format.

    ``pub_year`` is None when the source record carried no usable year;
    such records are excluded (and counted) when a corpus is built.
    MEDLINE-source records always have an empty ``cited_refs``.
    """

    record_id: str
    source: Source
    title: str
    pub_year: Optional[int]
    cited_refs: frozenset[RefKey] = frozenset()


@dataclass(frozen=True)
class YearSlice:
    year: int
    records: tuple[BibRecord, ...] = ()

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class BuildReport:
    total_input: int
    kept: int
    excluded_out_of_range: int
    excluded_missing_year: int


class EmptyCorpus(Exception):
    """No record survived the year filter."""


@dataclass(frozen=True)
class Corpus:
    """Records partitioned by publication year.

    Every year of ``year_range`` has a slice (possibly empty), so that
    interval analyses can compare any two in-range years.
    """

    slices: dict[int, YearSlice]
    year_range: tuple[int, int]
    build_report: BuildReport = field(default=BuildReport(0, 0, 0, 0), compare=False)

    def years(self) -> list[int]:
        lo, hi = self.year_range
        return list(range(lo, hi + 1))

    def slice(self, year: int) -> YearSlice:
        return self.slices.get(year, YearSlice(year=year))

    def records(self) -> Iterator[BibRecord]:
        for year in self.years():
            yield from self.slice(year).records

    @property
    def total_records(self) -> int:
        return sum(len(s) for s in self.slices.values())


def build_corpus(
    records: Iterable[BibRecord],
    year_range: Optional[tuple[int, int]] = None,
) -> Corpus:
    """Partition records into year slices, filtering to ``year_range``.

    Records without a year are always excluded; when ``year_range`` is None
    it is derived from the data. Raises EmptyCorpus when nothing survives.
    """
    records = list(records)
    dated = [r for r in records if r.pub_year is not None]
    missing_year = len(records) - len(dated)

    if year_range is None:
        if not dated:
            raise EmptyCorpus("no record carries a publication year")
        year_range = (min(r.pub_year for r in dated), max(r.pub_year for r in dated))

    lo, hi = year_range
    if lo > hi:
        raise ValueError(f"invalid year range {lo}:{hi}")

    by_year: dict[int, list[BibRecord]] = {year: [] for year in range(lo, hi + 1)}
    out_of_range = 0
    for record in dated:
        if lo <= record.pub_year <= hi:
            by_year[record.pub_year].append(record)
        else:
            out_of_range += 1

    kept = len(dated) - out_of_range
    if kept == 0:
        raise EmptyCorpus(f"no record falls inside the year range {lo}:{hi}")

    slices = {year: YearSlice(year=year, records=tuple(recs)) for year, recs in by_year.items()}
    report = BuildReport(
        total_input=len(records),
        kept=kept,
        excluded_out_of_range=out_of_range,
        excluded_missing_year=missing_year,
    )
    return Corpus(slices=slices, year_range=(lo, hi), build_report=report)


def slice_by_source(sl: YearSlice, source: Source) -> YearSlice:
    return YearSlice(year=sl.year, records=tuple(r for r in sl.records if r.source == source))


def corpus_sources(corpus: Corpus) -> list[Source]:
    """Sources present in the corpus, in enum declaration order."""
    present = {r.source for r in corpus.records()}
    return [s for s in Source if s in present]


# ── corpus cache ──────────────────────────────────────────────────────────────

# "|" maps to "\p" so no literal pipe survives inside a field and the
# ref-join column can be split on plain "|"; "#" is escaped so a record id
# can never make a data line look like a comment line.
_ESCAPES = [("\\", "\\\\"), ("\t", "\\t"), ("\n", "\\n"), ("\r", "\\r"),
            ("|", "\\p"), ("#", "\\#")]


def _escape(text: str) -> str:
    for plain, escaped in _ESCAPES:
        text = text.replace(plain, escaped)
    return text


def _unescape(text: str) -> str:
    out: list[str] = []
    it = iter(text)
    for ch in it:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(it, "")
        out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r", "p": "|"}.get(nxt, nxt))
    return "".join(out)


def write_cache(corpus: Corpus, path: Path) -> None:
    """Write the corpus as a TSV cache. Deterministic: years ascending,
    records in slice order, cited refs sorted by canonical key."""
    lines = [CACHE_HEADER]
    for year in corpus.years():
        for record in corpus.slice(year).records:
            refs = sorted(record.cited_refs, key=RefKey.sort_key)
            lines.append(
                "\t".join(
                    (
                        _escape(record.record_id),
                        record.source.name,
                        str(year),
                        _escape(record.title),
                        "|".join(_escape(k.raw) for k in refs),
                    )
                )
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_cache(path: Path) -> list[BibRecord]:
    """Read records back from a cache file written by write_cache."""
    records: list[BibRecord] = []
    with path.open(encoding="utf-8", newline="\n") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cells = _split_cache_line(line)
            if len(cells) != 5:
                raise ValueError(f"{path}:{lineno}: expected 5 cache columns, got {len(cells)}")
            record_id, source_name, year_text, title, refs_cell = cells
            refs = frozenset(
                parse_cited_ref(_unescape(part)) for part in refs_cell.split("|") if part
            )
            records.append(
                BibRecord(
                    record_id=_unescape(record_id),
                    source=Source[source_name],
                    title=_unescape(title),
                    pub_year=int(year_text),
                    cited_refs=refs,
                )
            )
    return records


def _split_cache_line(line: str) -> list[str]:
    # Tabs inside fields are escaped, so a plain split is safe.
    return line.split("\t")
