"""TSV report emitters.

Every report is UTF-8 with ``\\n`` line endings and starts with ``# key=value``
lines recording the analysis configuration, followed by a tab-separated
column header and data rows. Emitters are pure string builders with fully
specified orderings, so a report is byte-identical across runs and worker
counts.

The combined RSI matrix mirrors the shape of a printed stability table:
one row per threshold pair, one column per year interval, each cell
``shared/RSI`` with undefined intervals shown as ``-/-``.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .cocitation import CoreRefSet, RefPair, ThresholdPair
from .records import Corpus, Source, slice_by_source
from .refkey import RefKey
from .stability import GrooveReport, RsiSeries, format_cell, format_rsi
from .textmetrics import CoWordPair, PhrasePoint, TermStats

ConfigPairs = Sequence[tuple[str, str]]


def fraction_text(value: Optional[Fraction]) -> str:
    if value is None:
        return "-/-"
    return f"{value.numerator}/{value.denominator}"


def percent_text(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def cosine_text(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.4f}"


def render_table(config: ConfigPairs, columns: Sequence[str], rows) -> str:
    lines = [f"# {key}={value}" for key, value in config]
    lines.append("\t".join(columns))
    lines.extend("\t".join(str(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_report(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="\n")


# ── corpus summary ────────────────────────────────────────────────────────────

def summary_table(corpus: Corpus, distinct_refs_by_year: dict[int, int],
                  distinct_refs_total: int, config: ConfigPairs) -> str:
    columns = ["year", "citation_index_records", "medline_records",
               "total_records", "distinct_cited_refs"]
    rows = []
    totals = {source: 0 for source in Source}
    for year in corpus.years():
        sl = corpus.slice(year)
        per_source = {source: len(slice_by_source(sl, source)) for source in Source}
        for source, n in per_source.items():
            totals[source] += n
        rows.append([
            year,
            per_source[Source.CITATION_INDEX],
            per_source[Source.MEDLINE],
            len(sl),
            distinct_refs_by_year[year],
        ])
    rows.append([
        "TOTAL",
        totals[Source.CITATION_INDEX],
        totals[Source.MEDLINE],
        corpus.total_records,
        distinct_refs_total,
    ])
    return render_table(config, columns, rows)


# ── citation-graph tables ─────────────────────────────────────────────────────

def _ref_components(key: RefKey) -> list[str]:
    return [
        key.author,
        "-" if key.year is None else str(key.year),
        "-" if key.source_abbrev is None else key.source_abbrev,
        "-" if key.volume is None else str(key.volume),
        "-" if key.first_page is None else str(key.first_page),
    ]


def citation_table(year: int, counts: dict[RefKey, int], config: ConfigPairs) -> str:
    columns = ["year", "author", "ref_year", "source", "volume", "first_page",
               "citations"]
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0].sort_key()))
    rows = [[year, *_ref_components(key), n] for key, n in ranked]
    return render_table(config, columns, rows)


def cocitation_table(year: int, counts: dict[RefPair, int], config: ConfigPairs) -> str:
    columns = ["year", "ref_a", "ref_b", "cocitations"]
    ranked = sorted(
        counts.items(),
        key=lambda item: (-item[1], item[0][0].sort_key(), item[0][1].sort_key()),
    )
    rows = [[year, a.canonical(), b.canonical(), n] for (a, b), n in ranked]
    return render_table(config, columns, rows)


def core_membership_table(core_sets: Sequence[CoreRefSet], config: ConfigPairs) -> str:
    columns = ["year", "thresholds", "member"]
    rows = [
        [core.year, str(core.thresholds), member.canonical()]
        for core in core_sets
        for member in sorted(core.members, key=RefKey.sort_key)
    ]
    return render_table(config, columns, rows)


def core_size_matrix(cores_by_threshold: dict[ThresholdPair, Sequence[CoreRefSet]],
                     years: Sequence[int], config: ConfigPairs) -> str:
    columns = ["thresholds"] + [str(year) for year in years]
    rows = []
    for thresholds, cores in cores_by_threshold.items():
        sizes = {core.year: len(core) for core in cores}
        rows.append([str(thresholds)] + [sizes.get(year, 0) for year in years])
    return render_table(config, columns, rows)


# ── RSI tables ────────────────────────────────────────────────────────────────

def rsi_long_table(series: RsiSeries, config: ConfigPairs) -> str:
    columns = ["thresholds", "gap", "former_year", "later_year",
               "n_former", "n_later", "shared", "rsi_full", "rsi_2dp"]
    rows = [
        [
            str(series.thresholds),
            series.gap,
            p.former_year,
            p.later_year,
            p.n_former,
            p.n_later,
            p.shared,
            fraction_text(p.rsi),
            format_rsi(p.rsi) if p.defined else "-/-",
        ]
        for p in series.points
    ]
    return render_table(config, columns, rows)


def _interval_text(interval: tuple[int, int]) -> str:
    return f"{interval[0]}/{interval[1]}"


def rsi_matrix(series_list: Sequence[RsiSeries], groove: GrooveReport,
               config: ConfigPairs) -> str:
    """Threshold-by-interval matrix with the groove report appended.

    The consensus line is emitted only when more than one series took part;
    a single series has nothing to agree with.
    """
    intervals = [p.interval for p in series_list[0].points]
    columns = ["thresholds"] + [_interval_text(iv) for iv in intervals]
    rows = [
        [str(series.thresholds)] + [format_cell(p) for p in series.points]
        for series in series_list
    ]
    text = render_table(config, columns, rows)

    groove_columns = ["thresholds", "min_rsi_full", "min_rsi_2dp", "intervals"]
    groove_rows = [
        [
            str(m.thresholds),
            fraction_text(m.value),
            format_rsi(m.value),
            ",".join(_interval_text(iv) for iv in m.intervals),
        ]
        for m in groove.minima
    ]
    if len(series_list) > 1:
        consensus = ",".join(_interval_text(iv) for iv in groove.consensus) or "-"
        groove_rows.append(["CONSENSUS", "-", "-", consensus])
    text += "# groove: minimal defined RSI per series\n"
    text += "\t".join(groove_columns) + "\n"
    text += "".join("\t".join(str(c) for c in row) + "\n" for row in groove_rows)
    return text


# ── word tables ───────────────────────────────────────────────────────────────

def words_table(per_source: dict[Source, Sequence[TermStats]],
                config: ConfigPairs) -> str:
    """New-term table; one percent/doc-freq column pair per source, ``-``
    where a term did not qualify in that source."""
    sources = [s for s in Source if s in per_source]
    columns = ["term"]
    for source in sources:
        columns += [f"{source.value}_doc_freq", f"{source.value}_percent"]

    by_term: dict[str, dict[Source, TermStats]] = {}
    for source in sources:
        for stats in per_source[source]:
            by_term.setdefault(stats.term, {})[source] = stats

    def order(term: str):
        best = max(s.percent for s in by_term[term].values())
        return (-best, term)

    rows = []
    for term in sorted(by_term, key=order):
        row: list[str] = [term]
        for source in sources:
            stats = by_term[term].get(source)
            row += (["-", "-"] if stats is None
                    else [str(stats.doc_freq), percent_text(stats.percent)])
        rows.append(row)
    return render_table(config, columns, rows)


def cowords_table(per_source: dict[Source, Sequence[CoWordPair]],
                  config: ConfigPairs) -> str:
    """New co-word table; per-source co-doc-freq / cosine / percent columns."""
    sources = [s for s in Source if s in per_source]
    columns = ["term_a", "term_b"]
    for source in sources:
        columns += [f"{source.value}_co_doc_freq", f"{source.value}_cosine",
                    f"{source.value}_percent"]

    by_pair: dict[tuple[str, str], dict[Source, CoWordPair]] = {}
    for source in sources:
        for pair in per_source[source]:
            by_pair.setdefault((pair.term_a, pair.term_b), {})[source] = pair

    def order(key: tuple[str, str]):
        best = max(p.percent for p in by_pair[key].values())
        return (-best, key)

    rows = []
    for key in sorted(by_pair, key=order):
        row: list[str] = [key[0], key[1]]
        for source in sources:
            pair = by_pair[key].get(source)
            row += (["-", "-", "-"] if pair is None
                    else [str(pair.co_doc_freq), cosine_text(pair.cosine),
                          percent_text(pair.percent)])
        rows.append(row)
    return render_table(config, columns, rows)


def phrase_table(per_source: dict[Source, Sequence[PhrasePoint]],
                 years: Sequence[int], config: ConfigPairs) -> str:
    sources = [s for s in Source if s in per_source]
    columns = ["year"]
    for source in sources:
        columns += [f"{source.value}_doc_freq", f"{source.value}_percent"]
    by_year: dict[int, list[str]] = {year: [str(year)] for year in years}
    for source in sources:
        for point in per_source[source]:
            by_year[point.year] += [str(point.doc_freq), percent_text(point.percent)]
    rows = [by_year[year] for year in years]
    return render_table(config, columns, rows)


def phrase_series(points: Sequence[PhrasePoint], config: ConfigPairs) -> str:
    """Two-column (year, percent) series for plotting."""
    rows = [[p.year, percent_text(p.percent)] for p in points]
    return render_table(config, ["year", "percent"], rows)
