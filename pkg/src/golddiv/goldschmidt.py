"""Goldschmidt division: one seed multiply, then repeated (2 - r) rounds.

Each round scales both running products by the complement of the
denominator product, driving r toward 1 while q converges to N/D with
quadratic error decay. EXACT mode keeps every product bit and serves as
the reference for truncated runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fixedpoint import (
    DomainError,
    FixedValue,
    mul_exact,
    to_rational,
    truncate,
    twos_complement_of,
)
from .recip_table import ReciprocalTable, lookup

# Sentinel for mult_frac_bits: keep every product bit.
EXACT = None


@dataclass(frozen=True)
class DivisionProblem:
    """Numerator and denominator, both constrained to [1, 2)."""

    n: FixedValue
    d: FixedValue

    def __post_init__(self):
        if not 1 <= self.n.value < 2:
            raise DomainError(f"numerator must be in [1, 2), got {self.n.decimal_str()}")
        if not 1 <= self.d.value < 2:
            raise DomainError(f"denominator must be in [1, 2), got {self.d.decimal_str()}")


@dataclass(frozen=True)
class GoldschmidtConfig:
    """Iteration knobs.

    mult_frac_bits is the fraction width kept after every multiply
    (EXACT = keep all bits); both the q- and r-products truncate to the
    same width, since a single physical multiplier serves both chains.
    """

    p: int
    iterations: int = 3
    mult_frac_bits: int | None = EXACT
    complement_mode: str = "exact"

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.mult_frac_bits is not None and self.mult_frac_bits < self.p + 1:
            raise ValueError(
                f"mult_frac_bits must be at least p+1 = {self.p + 1} "
                f"to carry the seed, got {self.mult_frac_bits}"
            )
        if self.complement_mode not in ("exact", "ones"):
            raise ValueError(f"complement_mode must be 'exact' or 'ones', got {self.complement_mode!r}")


@dataclass(frozen=True)
class IterationTrace:
    """Full record of one division.

    k, q, r hold K_1..K_{m+1}, q_1..q_{m+1}, r_1..r_{m+1} for m
    iterations; index 0 is the seed round. The final r is recorded here
    even though the hardware never computes it (the last round's
    r-multiply is dead), so traces expose the full convergence picture.
    """

    problem: DivisionProblem
    k: tuple[FixedValue, ...]
    q: tuple[FixedValue, ...]
    r: tuple[FixedValue, ...]
    exact_quotient: Fraction


def clip_product(x: FixedValue, mult_frac_bits: int | None) -> FixedValue:
    """Apply the multiplier's output truncation; identity under EXACT.

    Products narrower than the target width are left alone (the
    hardware's zero-extension changes no value, so neither does this).
    """
    if mult_frac_bits is None or x.frac_bits <= mult_frac_bits:
        return x
    return truncate(x, mult_frac_bits)


def run_division(
    problem: DivisionProblem,
    config: GoldschmidtConfig,
    table: ReciprocalTable | None = None,
    seed: FixedValue | None = None,
) -> IterationTrace:
    """Step 1 (seed multiply) plus `iterations` rounds of Step 2.

    Exactly one of table / seed must be given; seed bypasses the ROM so
    the iteration can be probed independently of table construction.
    """
    if (table is None) == (seed is None):
        raise ValueError("provide exactly one of table or seed")
    if table is not None:
        if table.p != config.p:
            raise ValueError(f"table has p={table.p}, config has p={config.p}")
        k1 = lookup(table, problem.d)
    else:
        k1 = seed

    k = [k1]
    q = [clip_product(mul_exact(problem.n, k1), config.mult_frac_bits)]
    r = [clip_product(mul_exact(problem.d, k1), config.mult_frac_bits)]
    for _ in range(config.iterations):
        k_next = twos_complement_of(r[-1], config.complement_mode)
        k.append(k_next)
        q.append(clip_product(mul_exact(q[-1], k_next), config.mult_frac_bits))
        r.append(clip_product(mul_exact(r[-1], k_next), config.mult_frac_bits))
    return IterationTrace(
        problem=problem,
        k=tuple(k),
        q=tuple(q),
        r=tuple(r),
        exact_quotient=to_rational(problem.n) / to_rational(problem.d),
    )


def relative_error(trace: IterationTrace, i: int) -> Fraction:
    """|Q - q_i| / Q as an exact rational; i is 1-based (i=1 = seed round)."""
    if not 1 <= i <= len(trace.q):
        raise IndexError(f"i must be in [1, {len(trace.q)}], got {i}")
    return abs(trace.exact_quotient - to_rational(trace.q[i - 1])) / trace.exact_quotient


def required_iterations(p: int, target_fraction_bits: int) -> int:
    """Smallest m with p * 2**m >= target_fraction_bits.

    The seed error bound 2**-p doubles its bit count every round; the
    result is what the datapath counter gets preset for.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    m = 0
    while p << m < target_fraction_bits:
        m += 1
    return m


def render_trace(trace: IterationTrace) -> str:
    """One line per iteration: binary + decimal K/q/r and the running error."""
    q_exact = trace.exact_quotient
    lines = [
        f"N = {trace.problem.n}",
        f"D = {trace.problem.d}",
        f"Q = N/D = {q_exact} ({float(q_exact):.12g})",
    ]
    for i in range(1, len(trace.k) + 1):
        err = relative_error(trace, i)
        lines.append(
            f"i={i}  K_{i} = {trace.k[i - 1]}  q_{i} = {trace.q[i - 1]}  "
            f"r_{i} = {trace.r[i - 1]}  rel_err = {err} ({float(err):.6e})"
        )
    return "\n".join(lines)
