"""Accuracy sweeps: run many (N, D) pairs and compare against exact N/D.

Grids with p <= 8 are exhaustive over every p-fraction-bit operand pair;
wider grids fall back to a stratified sample drawn with a fixed seed so
every run of the same request is byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .fixedpoint import FixedValue, to_rational
from .goldschmidt import DivisionProblem, GoldschmidtConfig, relative_error, run_division
from .recip_table import ReciprocalTable, build_table

EXHAUSTIVE_MAX_P = 8
SAMPLE_SEED = 412903  # fixed so sampled sweeps reproduce byte-for-byte
DEFAULT_DENSITY = 32  # samples per axis when sampling

CSV_HEADER = "n_bits,d_bits,n_dec,d_dec,q_final_dec,rel_error,one_minus_r"


@dataclass(frozen=True)
class SweepRow:
    n: FixedValue
    d: FixedValue
    q_final: FixedValue
    rel_error: Fraction
    one_minus_r: Fraction


@dataclass(frozen=True)
class SweepResult:
    config: dict
    total_pairs: int
    worst_rel_error: Fraction
    mean_rel_error: Fraction
    pairs_exceeding_target: int
    max_one_minus_r: Fraction  # max |1 - r_final|


def default_target(p: int, iterations: int) -> Fraction:
    """Quadratic-convergence bound: the seed's p bits double every round."""
    return Fraction(1, 1 << (p << iterations))


def grid_values(p: int, density: int | None = None) -> list[FixedValue]:
    """Operand values for one axis, in increasing order.

    Exhaustive for p <= 8; otherwise one uniform draw per equal-width
    stratum of the index range, seeded by SAMPLE_SEED.
    """
    if p <= EXHAUSTIVE_MAX_P:
        return [FixedValue((1 << p) + j, 1, p) for j in range(1 << p)]
    density = density or DEFAULT_DENSITY
    rng = random.Random(SAMPLE_SEED)
    total = 1 << p
    picks = []
    for s in range(density):
        lo = s * total // density
        hi = (s + 1) * total // density
        picks.append(rng.randrange(lo, hi))
    return [FixedValue((1 << p) + j, 1, p) for j in picks]


def run_sweep(
    config: GoldschmidtConfig,
    table: ReciprocalTable | None = None,
    density: int | None = None,
    target: Fraction | None = None,
) -> tuple[SweepResult, list[SweepRow]]:
    """Run every grid pair through the division; rows come out in grid order."""
    if table is None:
        table = build_table(config.p)
    if target is None:
        target = default_target(config.p, config.iterations)
    axis = grid_values(config.p, density)

    rows = []
    worst = Fraction(0)
    total_err = Fraction(0)
    exceeding = 0
    max_one_minus_r = Fraction(0)
    for n in axis:
        for d in axis:
            trace = run_division(DivisionProblem(n, d), config, table=table)
            err = relative_error(trace, len(trace.q))
            one_minus_r = 1 - to_rational(trace.r[-1])
            rows.append(SweepRow(n=n, d=d, q_final=trace.q[-1], rel_error=err, one_minus_r=one_minus_r))
            worst = max(worst, err)
            total_err += err
            if err > target:
                exceeding += 1
            max_one_minus_r = max(max_one_minus_r, abs(one_minus_r))

    sampled = config.p > EXHAUSTIVE_MAX_P
    echo = {
        "p": config.p,
        "iterations": config.iterations,
        "mult_frac_bits": config.mult_frac_bits,
        "complement_mode": config.complement_mode,
        "grid": "stratified" if sampled else "exhaustive",
        "density": len(axis) if sampled else None,
        "sample_seed": SAMPLE_SEED if sampled else None,
        "target_rel_error": target,
    }
    result = SweepResult(
        config=echo,
        total_pairs=len(rows),
        worst_rel_error=worst,
        mean_rel_error=total_err / len(rows),
        pairs_exceeding_target=exceeding,
        max_one_minus_r=max_one_minus_r,
    )
    return result, rows


def dyadic_decimal_str(x: Fraction) -> str:
    """Exact terminating decimal for a (possibly negative) dyadic rational."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    k = x.denominator.bit_length() - 1
    if (1 << k) != x.denominator:
        raise ValueError(f"{x} is not dyadic")
    whole, rem = divmod(x.numerator, x.denominator)
    if rem == 0:
        return f"{sign}{whole}"
    digits = str(rem * 5**k).rjust(k, "0").rstrip("0")
    return f"{sign}{whole}.{digits}"


def render_csv(rows: list[SweepRow]) -> str:
    """One row per pair; values are exact (dyadic decimals, rational error)."""
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                (
                    row.n.binary_str(),
                    row.d.binary_str(),
                    row.n.decimal_str(),
                    row.d.decimal_str(),
                    row.q_final.decimal_str(),
                    str(row.rel_error),
                    dyadic_decimal_str(row.one_minus_r),
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict]:
    """Read a sweep CSV back as exact values (everything is lossless)."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or unexpected sweep CSV header")
    out = []
    for line in lines[1:]:
        n_bits, d_bits, n_dec, d_dec, q_dec, rel, one_minus_r = line.split(",")
        out.append(
            {
                "n_bits": n_bits,
                "d_bits": d_bits,
                "n": Fraction(n_dec),
                "d": Fraction(d_dec),
                "q_final": Fraction(q_dec),
                "rel_error": Fraction(rel),
                "one_minus_r": Fraction(one_minus_r),
            }
        )
    return out


def render_summary(result: SweepResult) -> str:
    cfg = result.config
    mult_bits = cfg["mult_frac_bits"]
    lines = [
        f"p = {cfg['p']}, iterations = {cfg['iterations']}, "
        f"mult_frac_bits = {'exact' if mult_bits is None else mult_bits}, "
        f"complement = {cfg['complement_mode']}",
        f"grid = {cfg['grid']}"
        + (f" (density {cfg['density']}, seed {cfg['sample_seed']})" if cfg["density"] else ""),
        f"pairs = {result.total_pairs}",
        f"worst rel_error = {result.worst_rel_error} ({float(result.worst_rel_error):.6e})",
        f"mean rel_error = {float(result.mean_rel_error):.6e}",
        f"pairs exceeding target {cfg['target_rel_error']}: {result.pairs_exceeding_target}",
        f"max |1 - r_final| = {result.max_one_minus_r} ({float(result.max_one_minus_r):.6e})",
    ]
    return "\n".join(lines)
