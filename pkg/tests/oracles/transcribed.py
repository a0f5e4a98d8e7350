"""Loaders for the hand-transcribed tables in tests/transcriptions."""

import csv
from pathlib import Path
from typing import Dict, List, Tuple

HERE = Path(__file__).resolve().parent.parent / "transcriptions"

# Canonical listing used by every transcription file.
VALUES = {
    "idm4": ["1", "b", "n", "0"],
    "tm": ["T", "t", "f", "F"],
    "ivfde": ["T0", "t0", "t1", "f0", "f1", "F1"],
}
DESIGNATED = {"idm4": {"1", "b"}, "tm": {"T", "t"}, "ivfde": {"T0", "t0", "t1"}}
BOX_COLUMNS = {"T": "[]T", "T4": "[]4", "T45": "[]45", "TB": "[]B", "T4B": "[]4B", "T5": "[]5"}


def read(name: str) -> List[List[str]]:
    with open(HERE / f"{name}.csv", newline="") as fh:
        return list(csv.reader(fh))


def cell_set(cell: str) -> frozenset:
    return frozenset(x.strip() for x in cell.split(",") if x.strip())


def binary(name: str) -> Dict[Tuple[str, str], frozenset]:
    rows = read(name)
    heads = rows[0][1:]
    return {(r[0], h): cell_set(c) for r in rows[1:] for h, c in zip(heads, r[1:])}


def unary(name: str, column: int = 1) -> Dict[str, frozenset]:
    rows = read(name)
    return {r[0]: cell_set(r[column]) for r in rows[1:]}


def box_column(family: str, variant: str) -> Dict[str, frozenset]:
    rows = read(f"{family}_box_columns")
    col = rows[0].index(BOX_COLUMNS[variant])
    return {r[0]: cell_set(r[col]) for r in rows[1:]}


def ivfde_tables(variant: str = "T") -> Dict[str, dict]:
    """The combined logic's tables keyed by connective name."""
    return {
        "and": binary("ivfde_and"), "or": binary("ivfde_or"), "imp": binary("ivfde_imp"),
        "neg": unary("ivfde_neg"), "sneg": unary("ivfde_sneg"), "box": box_column("ivfde", variant),
    }
