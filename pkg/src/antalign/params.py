"""Parameter bounds, the shipped length-tuned parameter table, and interpolation."""

from __future__ import annotations

import csv
from dataclasses import astuple, fields
from pathlib import Path

from .aco import AcoParams
from .seqcore import Sequence

# Lower bound substituted for zero so log-domain direction scoring stays finite.
EPSILON = 1e-9

PARAM_FIELDS = tuple(f.name for f in fields(AcoParams))

# Inclusive (low, high) bounds per parameter; the tuner samples, mutates, and
# validates against these.
TABLE_RANGES: dict[str, tuple[float, float]] = {
    "max_gen": (10, 40),
    "num_ants": (5, 30),
    "pher_step": (EPSILON, 1),
    "pher_weight": (EPSILON, 10),
    "match_weight": (EPSILON, 10),
    "region_weight": (EPSILON, 10),
    "init_pher": (EPSILON, 1),
    "local_decay": (EPSILON, 1),
    "global_decay": (EPSILON, 1),
    "prob_prob": (EPSILON, 1),
}

TABLE_KNOTS = tuple(range(10, 101, 10))

# Tuned parameter sets per template length, 10 through 100.  Row order:
# max_gen, num_ants, pher_step, pher_weight, match_weight, region_weight,
# init_pher, local_decay, global_decay, prob_prob.
TUNED_TABLE: dict[int, AcoParams] = {
    10: AcoParams(10, 5, 0.411191490, 9.434392207, 6.109820365, 3.909960135,
                  0.853763237, 0.660878498, 0.917907684, 0.990544051),
    20: AcoParams(10, 5, 0.438349294, 9.423857194, 6.926580738, 2.350289525,
                  0.830586273, 0.635274652, 1, 1),
    30: AcoParams(10, 5, 0.453581583, 9.353249096, 9.343075608, 2.224402772,
                  0.827315180, 0.606102419, 1, 1),
    40: AcoParams(10, 5, 0.517059770, 9.284172996, 9.244311660, 1.853908945,
                  0.827352487, 0.595236898, 0.965550166, 1),
    50: AcoParams(10, 5, 0.432201854, 9.290221874, 10, 2.142958734,
                  0.798933405, 0.571805707, 1, 1),
    60: AcoParams(10, 5, 0.436950953, 9.282690356, 10, 1.915834968,
                  0.728488635, 0.577967010, 1, 1),
    70: AcoParams(10, 5, 0.417636990, 9.149204714, 10, 1.736982155,
                  0.730894471, 0.579124731, 1, 1),
    80: AcoParams(10, 5, 0.366514982, 9.064648465, 10, 1.878705913,
                  0.620157623, 0.532124853, 1, 1),
    90: AcoParams(12, 8, 0.341437549, 9.332940631, 10, 1.856936304,
                  0.622498305, 0.519128179, 1, 1),
    100: AcoParams(15, 10, 0.329430526, 9.259328124, 10, 1.862138526,
                   0.628942392, 0.515925041, 1, 1),
}


def average_length(x: Sequence, y: Sequence) -> float:
    return (len(x) + len(y)) / 2


def interpolate_params(avg_len: float) -> AcoParams:
    """Linearly interpolate a parameter set between the two bracketing table rows.

    avg_len must lie in [10, 100]; exactly 100 returns the last row (there is
    no row beyond it to interpolate toward).  Knot lengths reproduce their
    table row exactly.
    """
    if not 10 <= avg_len <= 100:
        raise ValueError("average sequence length must be between 10 and 100")
    low = int(avg_len // 10) * 10
    if low >= 100:
        return TUNED_TABLE[100]
    weight = avg_len - low
    low_row = astuple(TUNED_TABLE[low])
    high_row = astuple(TUNED_TABLE[low + 10])
    values = tuple(
        weight * (hi - lo) / 10 + lo for lo, hi in zip(low_row, high_row)
    )
    return AcoParams(*values)


def validate_params(
    params: AcoParams, ranges: dict[str, tuple[float, float]] | None = None
) -> list[str]:
    """Return one message per out-of-range field; an empty list means valid."""
    ranges = ranges if ranges is not None else TABLE_RANGES
    problems = []
    for name, (low, high) in ranges.items():
        value = getattr(params, name)
        if not low <= value <= high:
            problems.append(f"{name}={value:g} outside [{low:g}, {high:g}]")
    return problems


def write_table_csv(table: dict[int, AcoParams], path: str | Path) -> None:
    """Export a tuned table as CSV: one header row, one row per knot length."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("length",) + PARAM_FIELDS)
        for length in sorted(table):
            writer.writerow((length,) + tuple(repr(v) for v in astuple(table[length])))


def read_table_csv(path: str | Path) -> dict[int, AcoParams]:
    """Load a tuned table written by write_table_csv."""
    expected = ("length",) + PARAM_FIELDS
    table: dict[int, AcoParams] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != expected:
            raise ValueError(f"bad table header: expected {expected}")
        for row in reader:
            if not row:
                continue
            if len(row) != len(expected):
                raise ValueError(f"bad table row: {row!r}")
            table[int(row[0])] = AcoParams(*(float(v) for v in row[1:]))
    return table
