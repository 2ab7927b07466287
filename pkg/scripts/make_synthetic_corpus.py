#!/usr/bin/env python3
"""Generate synthetic citation-index and MEDLINE export files.

The corpus embeds a deliberate break in citation behaviour: papers up to a
watershed year cite an old-era reference pool and use old-era title
vocabulary; later papers switch to a new-era pool and vocabulary. One
classic reference persists across both eras and the watershed year itself
cites a half-and-half mixture. Downstream, the stability series should dip
exactly at the interval that spans the watershed, and the title-word
reports should surface the new-era vocabulary.

Usage:
    python3 scripts/make_synthetic_corpus.py --out-dir demo/exports
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from pathlib import Path

CLASSIC_REF = "WATSON JD, 1953, NATURE, V171, P737"

OLD_POOL = [
    "PORTER KR, 1958, J CELL BIOL, V4, P127",
    "RUBIN H, 1960, VIROLOGY, V10, P29",
    "GROSS L, 1957, CANCER RES, V17, P603",
    "VOGT PK, 1962, VIROLOGY, V17, P124",
    "BATHER R, 1963, BRIT J CANC, V17, P461",
    "BRYAN WR, 1955, J NATL CANCER I, V16, P285",
    "PREHN RT, 1959, J NATL CANCER I, V22, P769",
]

NEW_POOL = [
    "MARROW TS, 1970, NATURE, V226, P1209",
    "HILLSIDE KM, 1970, NATURE, V226, P1211",
    "GARNET RA, 1970, NATURE, V227, P563",
    "FALK PD, 1970, P NATL ACAD SCI USA, V67, P1003",
    "NORBERG E, 1971, J VIROL, V7, P221",
    "OSTROM JT, 1970, SCIENCE, V170, P326",
    "QUADE LN, 1971, BIOCHEM BIOPH RES CO, V42, P1134",
]

OLD_WORDS = ["sarcoma", "virus", "tumor", "morphology", "culture", "chicken",
             "assay", "particles", "growth", "membrane", "strain", "focus"]
NEW_WORDS = ["polymerase", "rna", "dna", "hybrid", "template", "synthesis",
             "virions", "inhibition", "enzyme", "primer"]
FILLERS = ["of", "the", "in", "and", "by", "with", "from"]

SHIFT_PHRASES = ["reverse transcriptase", "reverse transcription"]

JOURNALS = ["VIROLOGY", "J VIROL", "NATURE", "SCIENCE", "CANCER RES",
            "P NATL ACAD SCI USA", "J NATL CANCER I", "BIOCHIM BIOPHYS ACTA"]

SURNAMES = ["ADLER", "BERG", "CONWAY", "DUARTE", "EKLUND", "FISHER", "GRANT",
            "HOLM", "IWATA", "JENSEN", "KELLER", "LUND", "MORITZ", "NOBLE",
            "OLSEN", "PRICE", "QUINN", "ROSSI", "STERN", "TANAKA"]


@dataclass(frozen=True)
class CorpusSpec:
    first_year: int = 1966
    last_year: int = 1975
    watershed: int = 1971
    papers_per_year: int = 24
    cite_probability: float = 0.9
    phrase_share: float = 0.4   # post-watershed papers carrying a shift phrase
    medline_share: float = 0.7  # records mirrored into the MEDLINE export
    seed: int = 20260814


def tail_refs(rng: random.Random, count: int = 150) -> list[str]:
    """Rarely-cited background references."""
    refs = []
    for i in range(count):
        surname = rng.choice(SURNAMES)
        initial = chr(ord("A") + i % 26)
        year = rng.randint(1945, 1969)
        journal = rng.choice(JOURNALS)
        refs.append(f"{surname} {initial}{i}, {year}, {journal}, "
                    f"V{rng.randint(1, 60)}, P{rng.randint(1, 1400)}")
    return refs


def year_pool(spec: CorpusSpec, year: int) -> list[str]:
    if year < spec.watershed:
        era = OLD_POOL
    elif year > spec.watershed:
        era = NEW_POOL
    else:
        era = OLD_POOL[:3] + NEW_POOL[:3]
    return [CLASSIC_REF] + era


def make_title(spec: CorpusSpec, rng: random.Random, year: int) -> str:
    words = NEW_WORDS if year > spec.watershed else OLD_WORDS
    if year == spec.watershed:
        words = OLD_WORDS + NEW_WORDS
    picked = rng.sample(words, rng.randint(3, 5))
    phrase = ""
    if year >= spec.watershed and rng.random() < spec.phrase_share:
        phrase = rng.choice(SHIFT_PHRASES) + " "
    title = phrase + f" {rng.choice(FILLERS)} ".join(picked)
    return title.upper()


def make_refs(spec: CorpusSpec, rng: random.Random, year: int,
              tail: list[str]) -> list[str]:
    refs = [ref for ref in year_pool(spec, year)
            if rng.random() < spec.cite_probability]
    refs += rng.sample(tail, rng.randint(1, 3))
    return refs


def generate(spec: CorpusSpec):
    """Return (index_rows, medline_rows) of synthetic records."""
    rng = random.Random(spec.seed)
    tail = tail_refs(rng)
    index_rows, medline_rows = [], []
    pmid = 7000000
    for year in range(spec.first_year, spec.last_year + 1):
        for i in range(spec.papers_per_year):
            title = make_title(spec, rng, year)
            refs = make_refs(spec, rng, year, tail)
            index_rows.append((f"IDX:{year}-{i:03d}", year, title, refs))
            if rng.random() < spec.medline_share:
                pmid += 1
                medline_rows.append((str(pmid), year, title))
    return index_rows, medline_rows


def write_index_export(path: Path, rows) -> None:
    lines = ["FN SYNTHETIC EXPORT", "VR 1.0"]
    for record_id, year, title, refs in rows:
        lines += ["PT J", f"TI {title}", f"PY {year}", f"UT {record_id}"]
        if refs:
            lines.append(f"CR {refs[0]};")
            lines.extend(f"   {ref};" for ref in refs[1:])
        lines.append("ER")
    lines.append("EF")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_medline_export(path: Path, rows) -> None:
    blocks = [
        f"PMID- {pmid}\nTI  - {title}\nDP  - {year} Jan\n"
        for pmid, year, title in rows
    ]
    path.write_text("\n".join(blocks), encoding="utf-8")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=Path("synthetic_exports"))
    parser.add_argument("--seed", type=int, default=CorpusSpec.seed)
    parser.add_argument("--papers-per-year", type=int, default=CorpusSpec.papers_per_year)
    parser.add_argument("--first-year", type=int, default=CorpusSpec.first_year)
    parser.add_argument("--last-year", type=int, default=CorpusSpec.last_year)
    parser.add_argument("--watershed", type=int, default=CorpusSpec.watershed)
    args = parser.parse_args()

    spec = CorpusSpec(
        first_year=args.first_year,
        last_year=args.last_year,
        watershed=args.watershed,
        papers_per_year=args.papers_per_year,
        seed=args.seed,
    )
    if not spec.first_year < spec.watershed < spec.last_year:
        parser.error("watershed year must fall strictly inside the year range")

    index_rows, medline_rows = generate(spec)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    index_path = args.out_dir / "citation_index.txt"
    medline_path = args.out_dir / "medline.txt"
    write_index_export(index_path, index_rows)
    write_medline_export(medline_path, medline_rows)
    print(f"wrote {index_path} ({len(index_rows)} records)")
    print(f"wrote {medline_path} ({len(medline_rows)} records)")
    print(f"watershed year: {spec.watershed} "
          f"(expect the gap-2 stability dip at {spec.watershed - 1}/{spec.watershed + 1})")


if __name__ == "__main__":
    main()
