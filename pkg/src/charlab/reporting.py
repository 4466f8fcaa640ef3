"""Record types, CSV emission, and the determinism digest.

All CSV output goes through emit_csv: RFC-4180 quoting via the csv module, a
mandatory header row taken from the record dataclass, reals printed with 17
significant digits, booleans as true/false, missing values as empty cells.
Rows are sorted by each record's sort key before writing, so thread count and
row production order never change the artifact.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass, fields

RUNTIME_COLUMN = "runtime_ms"


@dataclass(frozen=True)
class ScanRecord:
    """One grid point of a binary or ternary character-sum scan."""

    experiment: str
    kind: str  # binary | ternary
    p: int
    seed: int
    chi: str
    set_a: str
    set_b: str
    set_c: str
    size_a: int
    size_b: int
    size_c: int
    K: float  # |A+A| / |A|
    L: float  # |A+B|/|B| (binary) or |B+C|/|B| (ternary)
    delta: float  # log_p |A| - 12/31
    lhs: float  # |character sum|
    rhs: float | None  # bound kernel; empty when delta <= 0
    ratio: float | None
    p_large_enough: bool
    flag: str
    runtime_ms: float

    SORT = ("experiment", "kind", "p", "seed", "chi", "set_a", "set_b", "set_c")


@dataclass(frozen=True)
class WeilRecord:
    p: int
    order: int
    case: int
    m: int
    poly: str
    abs_sum: float
    bound: float
    applicable: bool
    holds: bool | None
    runtime_ms: float

    SORT = ("p", "order", "case")


@dataclass(frozen=True)
class DavenportRecord:
    p: int
    chi: str
    i_size: int
    r: int
    value_direct: float
    value_expanded: float
    rel_gap: float
    bound: float
    agree: bool  # strategies within 1e-6 relative
    holds: bool  # value < bound, strict
    runtime_ms: float

    SORT = ("p", "chi", "i_size", "r")


@dataclass(frozen=True)
class PeriodScanRecord:
    experiment: str
    p: int
    seed: int
    set_a: str
    epsilon: float
    q: float
    shift: int
    t_size: int
    doubling: float
    floor_constant: float
    predicted_floor: float
    norm_budget: float
    max_deviation: float
    verified: bool  # independent norm recomputation confirmed every period
    chain_lhs: float
    chain_shifted: float
    chain_l1: float
    chain_identity_gap: float
    chain_holds: bool
    runtime_ms: float

    SORT = ("experiment", "p", "seed", "set_a", "epsilon")


@dataclass(frozen=True)
class CountsRecord:
    suite: str  # system | sextuple | incidence | energy_add | energy_mul
    p: int
    seed: int
    size_a: int
    size_b: int
    size_c: int
    size_s: int
    value: int
    oracle: int
    match: bool
    runtime_ms: float

    SORT = ("suite", "p", "seed")


@dataclass(frozen=True)
class PaleyRecord:
    p: int
    omega: int
    runtime_ms: float

    SORT = ("p",)


@dataclass(frozen=True)
class SelftestRecord:
    suite: str
    cases: int
    failures: int
    status: str  # PASS | FAIL
    runtime_ms: float

    SORT = ("suite",)


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return ""
        return f"{v:.17g}"
    return str(v)


def sort_records(records):
    if not records:
        return []
    key_fields = type(records[0]).SORT
    return sorted(records, key=lambda r: tuple(getattr(r, f) for f in key_fields))


def emit_csv(records, destination, record_type=None) -> None:
    """Write records (one dataclass type) as CSV with a mandatory header row."""
    if record_type is None:
        if not records:
            raise ValueError("record_type is required for an empty record list")
        record_type = type(records[0])
    header = [f.name for f in fields(record_type) if f.name != "SORT"]

    def write(fh):
        w = csv.writer(fh)
        w.writerow(header)
        for rec in sort_records(list(records)):
            w.writerow([_format_cell(getattr(rec, name)) for name in header])

    if hasattr(destination, "write"):
        write(destination)
    else:
        with open(destination, "w", newline="", encoding="utf-8") as fh:
            write(fh)


def csv_digest(path, exclude=(RUNTIME_COLUMN,)) -> str:
    """SHA-256 of the CSV with the excluded columns dropped.

    Used by the determinism checks: they compare digests rather than raw
    bytes so the runtime column can vary freely.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        return hashlib.sha256(b"").hexdigest()
    keep = [i for i, name in enumerate(rows[0]) if name not in exclude]
    buf = io.StringIO()
    w = csv.writer(buf)
    for row in rows:
        w.writerow([row[i] for i in keep])
    return hashlib.sha256(buf.getvalue().encode("utf-8")).hexdigest()
