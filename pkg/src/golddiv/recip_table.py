"""Reciprocal seed ROM: p index bits in, a (p+2)-bit approximation of 1/D out.

Entry j approximates the reciprocal over the input interval
[1 + j*2^-p, 1 + (j+1)*2^-p) by rounding 1/midpoint to p+1 fraction bits.
The worst-case seed error is verified exhaustively, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fixedpoint import DomainError, FixedValue, from_fraction, zero_extend

# Construction rule tag written into dumped table files.
TABLE_RULE = "midpoint-reciprocal-nearest"

MIN_P = 1
MAX_P = 20  # exhaustive verification has to stay desk-scale


@dataclass
class ReciprocalTable:
    """ROM contents plus the exhaustively measured seed error.

    Entries are 1 integer bit + (p+1) fraction bits, non-increasing with
    the index. All entries lie in [1/2, 1]; the top interval's entry sits
    exactly at 1/2 for every p (its rounded midpoint reciprocal), so the
    lower bound is closed.
    """

    p: int
    entries: list[FixedValue]
    max_seed_error: Fraction | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.entries) != 1 << self.p:
            raise ValueError(
                f"table for p={self.p} needs {1 << self.p} entries, "
                f"got {len(self.entries)}"
            )


def interval_midpoint(p: int, index: int) -> Fraction:
    return 1 + Fraction(2 * index + 1, 1 << (p + 1))


def build_table(p: int) -> ReciprocalTable:
    """Build the 2^p-entry ROM for index width p."""
    if not MIN_P <= p <= MAX_P:
        raise ValueError(f"p must be in [{MIN_P}, {MAX_P}], got {p}")
    one = FixedValue(1 << (p + 1), 1, p + 1)
    entries = []
    for j in range(1 << p):
        entry = from_fraction(1 / interval_midpoint(p, j), p + 1, rounding="nearest")
        entries.append(one if entry.value > 1 else entry)
    return ReciprocalTable(p=p, entries=entries)


def lookup(table: ReciprocalTable, d: FixedValue) -> FixedValue:
    """Fetch the seed for d in [1, 2) by its top p fraction bits.

    Narrower inputs are zero-extended first, so any valid d works.
    """
    if not 1 <= d.value < 2:
        raise DomainError(f"lookup input must be in [1, 2), got {d.decimal_str()}")
    if d.frac_bits < table.p:
        d = zero_extend(d, table.p)
    frac_field = d.magnitude & ((1 << d.frac_bits) - 1)
    index = frac_field >> (d.frac_bits - table.p)
    return table.entries[index]


def verify_table(table: ReciprocalTable) -> Fraction:
    """Exhaustively measure the worst seed error max |1 - D*K|.

    For each index both interval endpoints are evaluated exactly; since
    the error is affine in D, this bounds every D in [1, 2), including
    inputs wider than p fraction bits. The result is stored on the table.
    """
    width = Fraction(1, 1 << table.p)
    worst = Fraction(0)
    for j, entry in enumerate(table.entries):
        k = entry.value
        lo = 1 + j * width
        hi = 1 + (j + 1) * width
        worst = max(worst, abs(1 - lo * k), abs(1 - hi * k))
    table.max_seed_error = worst
    return worst


def dump_table(table: ReciprocalTable) -> str:
    """Serialize: two header lines (p, rule) then one binary entry per line."""
    lines = [f"p={table.p}", f"rule={TABLE_RULE}"]
    lines.extend(entry.binary_str() for entry in table.entries)
    return "\n".join(lines) + "\n"


def load_table(text: str) -> ReciprocalTable:
    """Parse the dump_table format back into a table."""
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 2 or not lines[0].startswith("p=") or not lines[1].startswith("rule="):
        raise ValueError("table file must start with 'p=' and 'rule=' header lines")
    p = int(lines[0][2:])
    rule = lines[1][5:]
    if rule != TABLE_RULE:
        raise ValueError(f"unknown table rule {rule!r}")
    entries = []
    for line in lines[2:]:
        int_part, _, frac_part = line.strip().partition(".")
        entries.append(FixedValue(int(int_part + frac_part, 2), len(int_part), len(frac_part)))
    return ReciprocalTable(p=p, entries=entries)
