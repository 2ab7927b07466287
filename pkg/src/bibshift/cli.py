"""Command-line front end.

Subcommands: ``ingest`` (parse exports, write the corpus cache plus an
ingest report), ``summary`` (per-year record counts), ``rsi`` (stability
tables, combined matrix, groove report), ``core-refs`` (core-set
membership and sizes), ``words`` / ``cowords`` (new-term and new-co-word
tables for a year pair), ``phrase`` (head + stem-prefix trend series).

Flags may also come from a JSON config file (``--config``); explicit
command-line flags win. All reports are deterministic: re-running a
command with the same inputs and any ``--workers`` value reproduces the
files byte for byte.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence, TypeVar

from . import reports
from .cocitation import ThresholdPair, core_references, distinct_ref_count
from .ingest import (
    MalformedRecord,
    ParseResult,
    link_records,
    parse_citation_index_export,
    parse_medline_export,
)
from .records import (
    BibRecord,
    Corpus,
    EmptyCorpus,
    Source,
    build_corpus,
    read_cache,
    slice_by_source,
    write_cache,
)
from .stability import GapTooLarge, NoDefinedPoints, groove_detect, rsi_series
from .textmetrics import (
    StopWordList,
    default_stopwords,
    load_stopwords,
    new_coword_pairs,
    new_terms,
    phrase_trend,
)

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_CACHE = "corpus_cache.tsv"
DEFAULT_THRESHOLDS = "15/11,15/8,11/9,10/8"
DEFAULT_GAPS = "1,2"
DEFAULT_MIN_PERCENT = 1.0
DEFAULT_MIN_COSINE = 0.25

_CONFIG_KEYS = {
    "cache", "out_dir", "years", "thresholds", "gaps", "min_percent",
    "min_cosine", "stopwords", "workers", "index", "medline", "head", "stem",
}


class CliError(Exception):
    """User-facing failure; printed as ``error: ...`` with exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    cache: Path
    out_dir: Path
    years: Optional[tuple[int, int]]
    thresholds: tuple[ThresholdPair, ...]
    gaps: tuple[int, ...]
    min_percent: float
    min_cosine: float
    stopwords: Optional[Path]
    workers: int
    index: Optional[Path] = None
    medline: Optional[Path] = None
    head: Optional[str] = None
    stem: Optional[str] = None


# ── argument handling ─────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bibshift",
        description="Detect shifts in a literature corpus via core-reference "
                    "stability and title-word analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path,
                       help="JSON config file; explicit flags override it")
        p.add_argument("--cache", type=Path,
                       help=f"corpus cache file (default {DEFAULT_CACHE})")
        p.add_argument("--out-dir", type=Path,
                       help="directory for report files (default .)")
        p.add_argument("--years",
                       help="year range A:B (for words/cowords: the compared pair)")
        p.add_argument("--workers", type=int,
                       help="parallel workers (default 1); never affects output bytes")

    p = sub.add_parser("ingest", help="parse export files and write the corpus cache")
    common(p)
    p.add_argument("--index", type=Path, help="citation-index export file")
    p.add_argument("--medline", type=Path, help="MEDLINE export file")

    p = sub.add_parser("summary", help="per-year record and cited-reference counts")
    common(p)

    p = sub.add_parser("rsi", help="stability series, combined matrix, groove report")
    common(p)
    p.add_argument("--thresholds",
                   help=f"comma-separated cite/cocite pairs (default {DEFAULT_THRESHOLDS})")
    p.add_argument("--gaps", help=f"comma-separated interval gaps (default {DEFAULT_GAPS})")

    p = sub.add_parser("core-refs", help="core-reference membership and set sizes")
    common(p)
    p.add_argument("--thresholds",
                   help=f"comma-separated cite/cocite pairs (default {DEFAULT_THRESHOLDS})")

    p = sub.add_parser("words", help="new title words for a year pair")
    common(p)
    p.add_argument("--min-percent", type=float,
                   help=f"later-year document-frequency floor (default {DEFAULT_MIN_PERCENT})")
    p.add_argument("--stopwords", type=Path, help="stop-word list file (default: built-in)")

    p = sub.add_parser("cowords", help="new co-word pairs for a year pair")
    common(p)
    p.add_argument("--min-percent", type=float,
                   help=f"later-year document-frequency floor (default {DEFAULT_MIN_PERCENT})")
    p.add_argument("--min-cosine", type=float,
                   help=f"cosine floor for pairs (default {DEFAULT_MIN_COSINE})")
    p.add_argument("--stopwords", type=Path, help="stop-word list file (default: built-in)")

    p = sub.add_parser("phrase", help="per-year trend of head word + stem prefix")
    common(p)
    p.add_argument("--head", help="leading word, e.g. reverse")
    p.add_argument("--stem", help="stem prefix of the following word, e.g. transcr")

    return parser


def _load_config_file(path: Optional[Path]) -> dict:
    if path is None:
        return {}
    if not path.exists():
        raise CliError(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CliError(f"cannot parse config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise CliError(f"unknown config keys in {path}: {', '.join(unknown)}")
    return data


def _setting(args: argparse.Namespace, file_cfg: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is None:
        value = file_cfg.get(name, default)
    return value


def parse_years(text: str) -> tuple[int, int]:
    first, sep, last = text.partition(":")
    if not sep:
        raise CliError(f"cannot parse years {text!r} (want A:B)")
    try:
        lo, hi = int(first), int(last)
    except ValueError as exc:
        raise CliError(f"cannot parse years {text!r} (want A:B)") from exc
    if lo > hi:
        raise CliError(f"years {text!r} are reversed")
    return lo, hi


def parse_thresholds(text: str) -> tuple[ThresholdPair, ...]:
    try:
        pairs = tuple(ThresholdPair.parse(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if not pairs:
        raise CliError("thresholds list is empty")
    return pairs


def parse_gaps(text: str) -> tuple[int, ...]:
    try:
        gaps = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(f"cannot parse gaps {text!r} (want N,M,...)") from exc
    if any(g < 1 for g in gaps):
        raise CliError(f"gaps must be >= 1, got {text!r}")
    return gaps


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(getattr(args, "config", None))

    years_text = _setting(args, file_cfg, "years")
    workers = int(_setting(args, file_cfg, "workers", 1))
    if workers < 1:
        raise CliError(f"workers must be >= 1, got {workers}")

    def as_path(value) -> Optional[Path]:
        return None if value is None else Path(value)

    return RunConfig(
        command=args.command,
        cache=Path(_setting(args, file_cfg, "cache", DEFAULT_CACHE)),
        out_dir=Path(_setting(args, file_cfg, "out_dir", ".")),
        years=parse_years(str(years_text)) if years_text is not None else None,
        thresholds=parse_thresholds(str(_setting(args, file_cfg, "thresholds",
                                                 DEFAULT_THRESHOLDS))),
        gaps=parse_gaps(str(_setting(args, file_cfg, "gaps", DEFAULT_GAPS))),
        min_percent=float(_setting(args, file_cfg, "min_percent", DEFAULT_MIN_PERCENT)),
        min_cosine=float(_setting(args, file_cfg, "min_cosine", DEFAULT_MIN_COSINE)),
        stopwords=as_path(_setting(args, file_cfg, "stopwords")),
        workers=workers,
        index=as_path(_setting(args, file_cfg, "index")),
        medline=as_path(_setting(args, file_cfg, "medline")),
        head=_setting(args, file_cfg, "head"),
        stem=_setting(args, file_cfg, "stem"),
    )


# ── shared helpers ────────────────────────────────────────────────────────────

def _pmap(fn: Callable[[T], R], items: Sequence[T], workers: int) -> list[R]:
    """Order-preserving map, optionally threaded. Results depend only on
    the inputs, never on scheduling."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _load_corpus(cfg: RunConfig, full: bool = False) -> Corpus:
    """Corpus from the cache; ``full`` ignores the --years restriction
    (words/cowords read --years as the compared pair, not a filter)."""
    if not cfg.cache.exists():
        raise CliError(
            f"cache file not found: {cfg.cache} (run the ingest command first)"
        )
    try:
        return build_corpus(read_cache(cfg.cache), None if full else cfg.years)
    except (EmptyCorpus, ValueError) as exc:
        raise CliError(f"cannot build corpus from {cfg.cache}: {exc}") from exc


def _load_stopwords(cfg: RunConfig) -> StopWordList:
    if cfg.stopwords is None:
        return default_stopwords()
    if not cfg.stopwords.exists():
        raise CliError(f"stop-word file not found: {cfg.stopwords}")
    return load_stopwords(cfg.stopwords)


def _years_text(corpus: Corpus) -> str:
    lo, hi = corpus.year_range
    return f"{lo}:{hi}"


def _thresholds_text(cfg: RunConfig) -> str:
    return ",".join(str(t) for t in cfg.thresholds)


def _stopwords_text(stop: StopWordList) -> str:
    return stop.source_path


def _write(cfg: RunConfig, name: str, text: str, written: list[Path]) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / name
    reports.write_report(path, text)
    written.append(path)


def _require_year_pair(cfg: RunConfig, corpus: Corpus) -> tuple[int, int]:
    if cfg.years is None:
        raise CliError(f"{cfg.command} needs --years FORMER:LATER")
    former, later = cfg.years
    known = {y for y in corpus.years() if len(corpus.slice(y))}
    missing = [y for y in (former, later) if y not in known]
    if former == later:
        raise CliError(f"year pair {former}:{later} compares a year with itself")
    if missing:
        raise CliError(
            f"year pair {former}:{later} not covered by the corpus "
            f"(available years: {', '.join(str(y) for y in sorted(known))})"
        )
    return former, later


def _distinct_refs(corpus: Corpus) -> tuple[dict[int, int], int]:
    by_year = {year: distinct_ref_count(corpus.slice(year)) for year in corpus.years()}
    union = set()
    for record in corpus.records():
        union.update(record.cited_refs)
    return by_year, len(union)


def _sources(corpus: Corpus) -> list[Source]:
    present = {record.source for record in corpus.records()}
    return [s for s in Source if s in present]


def _source_corpus(corpus: Corpus, source: Source) -> Corpus:
    slices = {
        year: slice_by_source(corpus.slice(year), source) for year in corpus.years()
    }
    return Corpus(slices=slices, year_range=corpus.year_range,
                  build_report=corpus.build_report)


# ── commands ──────────────────────────────────────────────────────────────────

def _parse_export(path: Optional[Path], parser) -> ParseResult:
    if path is None:
        return ParseResult()
    if not path.exists():
        raise CliError(f"input file not found: {path}")
    try:
        with path.open(encoding="utf-8") as handle:
            return parser(handle)
    except MalformedRecord as exc:
        raise CliError(f"{path}: {exc}") from exc


def cmd_ingest(cfg: RunConfig, written: list[Path]) -> list[str]:
    if cfg.index is None and cfg.medline is None:
        raise CliError("ingest needs at least one input file (--index and/or --medline)")

    index_result = _parse_export(cfg.index, parse_citation_index_export)
    medline_result = _parse_export(cfg.medline, parse_medline_export)

    warnings = list(index_result.warnings) + list(medline_result.warnings)
    for missing in index_result.missing + medline_result.missing:
        warnings.append(f"record {missing.record_id} missing field {missing.field}")

    records: list[BibRecord] = index_result.records + medline_result.records
    try:
        corpus = build_corpus(records, cfg.years)
    except EmptyCorpus as exc:
        raise CliError(f"cannot build corpus: {exc}") from exc

    cfg.cache.parent.mkdir(parents=True, exist_ok=True)
    write_cache(corpus, cfg.cache)
    written.append(cfg.cache)

    if cfg.index is not None and cfg.medline is not None:
        kept = list(corpus.records())
        linkage = link_records(
            [r for r in kept if r.source is Source.MEDLINE],
            [r for r in kept if r.source is Source.CITATION_INDEX],
        )
        linkage_text = linkage.coverage_text()
    else:
        linkage_text = "not applicable"

    report = corpus.build_report
    config = [
        ("command", "ingest"),
        ("years", _years_text(corpus)),
        ("total_input", str(report.total_input)),
        ("kept", str(report.kept)),
        ("excluded_missing_year", str(report.excluded_missing_year)),
        ("excluded_out_of_range", str(report.excluded_out_of_range)),
        ("linkage_coverage", linkage_text),
    ] + [("warning", w) for w in warnings]

    by_year, total = _distinct_refs(corpus)
    _write(cfg, "ingest_report.tsv", reports.summary_table(corpus, by_year, total, config),
           written)
    return warnings


def cmd_summary(cfg: RunConfig, written: list[Path]) -> None:
    corpus = _load_corpus(cfg)
    config = [("command", "summary"), ("years", _years_text(corpus))]
    by_year, total = _distinct_refs(corpus)
    _write(cfg, "summary.tsv", reports.summary_table(corpus, by_year, total, config),
           written)


def cmd_core_refs(cfg: RunConfig, written: list[Path]) -> None:
    corpus = _load_corpus(cfg)
    years = corpus.years()

    def cores_for(thresholds: ThresholdPair):
        return [core_references(corpus.slice(year), thresholds) for year in years]

    all_cores = _pmap(cores_for, cfg.thresholds, cfg.workers)
    by_threshold = dict(zip(cfg.thresholds, all_cores))

    config = [
        ("command", "core-refs"),
        ("years", _years_text(corpus)),
        ("thresholds", _thresholds_text(cfg)),
    ]
    flat = [core for cores in all_cores for core in cores]
    _write(cfg, "core_refs.tsv", reports.core_membership_table(flat, config), written)
    _write(cfg, "core_sizes.tsv",
           reports.core_size_matrix(by_threshold, years, config), written)


def cmd_rsi(cfg: RunConfig, written: list[Path]) -> None:
    corpus = _load_corpus(cfg)
    for gap in cfg.gaps:
        def series_for(thresholds: ThresholdPair):
            return rsi_series(corpus, thresholds, gap)

        try:
            series_list = _pmap(series_for, cfg.thresholds, cfg.workers)
            groove = groove_detect(list(series_list))
        except (GapTooLarge, NoDefinedPoints) as exc:
            raise CliError(str(exc)) from exc

        base_config = [
            ("command", "rsi"),
            ("years", _years_text(corpus)),
            ("gap", str(gap)),
        ]
        for series in series_list:
            name = f"rsi_{series.thresholds.cite_min}-{series.thresholds.cocite_min}_gap{gap}.tsv"
            config = base_config + [("thresholds", str(series.thresholds))]
            _write(cfg, name, reports.rsi_long_table(series, config), written)

        config = base_config + [("thresholds", _thresholds_text(cfg))]
        _write(cfg, f"rsi_matrix_gap{gap}.tsv",
               reports.rsi_matrix(series_list, groove, config), written)


def cmd_words(cfg: RunConfig, written: list[Path]) -> None:
    corpus = _load_corpus(cfg, full=True)
    stop = _load_stopwords(cfg)
    former, later = _require_year_pair(cfg, corpus)
    sources = _sources(corpus)

    def terms_for(source: Source):
        return new_terms(
            slice_by_source(corpus.slice(former), source),
            slice_by_source(corpus.slice(later), source),
            stop,
            cfg.min_percent,
        )

    per_source = dict(zip(sources, _pmap(terms_for, sources, cfg.workers)))
    config = [
        ("command", "words"),
        ("years", f"{former}:{later}"),
        ("min_percent", str(cfg.min_percent)),
        ("stopwords", _stopwords_text(stop)),
    ]
    _write(cfg, f"words_{former}-{later}.tsv",
           reports.words_table(per_source, config), written)


def cmd_cowords(cfg: RunConfig, written: list[Path]) -> None:
    corpus = _load_corpus(cfg, full=True)
    stop = _load_stopwords(cfg)
    former, later = _require_year_pair(cfg, corpus)
    sources = _sources(corpus)

    def pairs_for(source: Source):
        return new_coword_pairs(
            slice_by_source(corpus.slice(former), source),
            slice_by_source(corpus.slice(later), source),
            stop,
            cfg.min_cosine,
            cfg.min_percent,
        )

    per_source = dict(zip(sources, _pmap(pairs_for, sources, cfg.workers)))
    config = [
        ("command", "cowords"),
        ("years", f"{former}:{later}"),
        ("min_percent", str(cfg.min_percent)),
        ("min_cosine", str(cfg.min_cosine)),
        ("stopwords", _stopwords_text(stop)),
    ]
    _write(cfg, f"cowords_{former}-{later}.tsv",
           reports.cowords_table(per_source, config), written)


def cmd_phrase(cfg: RunConfig, written: list[Path]) -> None:
    if not cfg.head or not cfg.stem:
        raise CliError("phrase needs --head and --stem")
    corpus = _load_corpus(cfg)
    sources = _sources(corpus)

    def trend_for(source: Source):
        return phrase_trend(_source_corpus(corpus, source), cfg.head, cfg.stem)

    per_source = dict(zip(sources, _pmap(trend_for, sources, cfg.workers)))
    config = [
        ("command", "phrase"),
        ("years", _years_text(corpus)),
        ("head", cfg.head),
        ("stem", cfg.stem),
    ]
    _write(cfg, f"phrase_{cfg.head}_{cfg.stem}.tsv",
           reports.phrase_table(per_source, corpus.years(), config), written)
    _write(cfg, f"phrase_series_{cfg.head}_{cfg.stem}.tsv",
           reports.phrase_series(phrase_trend(corpus, cfg.head, cfg.stem), config),
           written)


_COMMANDS = {
    "ingest": cmd_ingest,
    "summary": cmd_summary,
    "rsi": cmd_rsi,
    "core-refs": cmd_core_refs,
    "words": cmd_words,
    "cowords": cmd_cowords,
    "phrase": cmd_phrase,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        written: list[Path] = []
        result = _COMMANDS[cfg.command](cfg, written)
        if result:
            for warning in result:
                print(f"warning: {warning}", file=sys.stderr)
        for path in written:
            print(f"wrote {path}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
