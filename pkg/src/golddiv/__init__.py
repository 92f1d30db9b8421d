"""Bit-exact Goldschmidt division with a reciprocal ROM seed, plus a
cycle-accurate structural model of the replicated and feedback datapaths."""

from .fixedpoint import (
    DomainError,
    FixedValue,
    WidthOverflowError,
    from_bits,
    from_fraction,
    mul_exact,
    parse_value,
    round_nearest,
    to_rational,
    truncate,
    twos_complement_of,
    zero_extend,
)
from .goldschmidt import (
    EXACT,
    DivisionProblem,
    GoldschmidtConfig,
    IterationTrace,
    relative_error,
    required_iterations,
    run_division,
)
from .recip_table import ReciprocalTable, build_table, dump_table, load_table, lookup, verify_table

__version__ = "1.0.0"

__all__ = [
    "DomainError",
    "FixedValue",
    "WidthOverflowError",
    "from_bits",
    "from_fraction",
    "mul_exact",
    "parse_value",
    "round_nearest",
    "to_rational",
    "truncate",
    "twos_complement_of",
    "zero_extend",
    "EXACT",
    "DivisionProblem",
    "GoldschmidtConfig",
    "IterationTrace",
    "relative_error",
    "required_iterations",
    "run_division",
    "ReciprocalTable",
    "build_table",
    "dump_table",
    "load_table",
    "lookup",
    "verify_table",
    "__version__",
]
