"""Bit-exact unsigned fixed-point arithmetic.

Every value is an integer magnitude with a declared split into integer and
fraction bits; nothing is ever stored as a float. Multiplication is exact
(widths grow), and all precision loss goes through `truncate` or
`round_nearest` explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class WidthOverflowError(ValueError):
    """Magnitude does not fit the declared bit width."""


class DomainError(ValueError):
    """Value is outside the domain an operation requires."""


# Fraction width used when a decimal input string has no exact binary form.
DECIMAL_PARSE_FRAC_BITS = 32


@dataclass(frozen=True, eq=False)
class FixedValue:
    """Unsigned fixed-point number: magnitude * 2**(-frac_bits).

    Equality and hashing are format-independent: two values compare equal
    iff their exact rational values are equal, regardless of declared
    widths.
    """

    magnitude: int
    int_bits: int
    frac_bits: int

    def __post_init__(self):
        if self.int_bits < 1:
            raise ValueError(f"int_bits must be >= 1, got {self.int_bits}")
        if self.frac_bits < 0:
            raise ValueError(f"frac_bits must be >= 0, got {self.frac_bits}")
        if self.magnitude < 0:
            raise ValueError(f"magnitude must be >= 0, got {self.magnitude}")
        if self.magnitude >= 1 << (self.int_bits + self.frac_bits):
            raise WidthOverflowError(
                f"magnitude {self.magnitude} needs more than "
                f"{self.int_bits}+{self.frac_bits} bits"
            )

    @property
    def value(self) -> Fraction:
        return Fraction(self.magnitude, 1 << self.frac_bits)

    @property
    def ulp(self) -> Fraction:
        return Fraction(1, 1 << self.frac_bits)

    @property
    def bit_width(self) -> int:
        return self.int_bits + self.frac_bits

    def __eq__(self, other) -> bool:
        if not isinstance(other, FixedValue):
            return NotImplemented
        return self.magnitude << other.frac_bits == other.magnitude << self.frac_bits

    def __hash__(self) -> int:
        return hash(self.value)

    def binary_str(self) -> str:
        """Render as 'i.ffff' with the declared digit counts."""
        int_part = self.magnitude >> self.frac_bits
        digits = format(int_part, f"0{self.int_bits}b")
        if self.frac_bits == 0:
            return digits
        frac_part = self.magnitude & ((1 << self.frac_bits) - 1)
        return digits + "." + format(frac_part, f"0{self.frac_bits}b")

    def decimal_str(self) -> str:
        """Exact decimal rendering (dyadic values always terminate)."""
        int_part, rem = divmod(self.magnitude, 1 << self.frac_bits)
        if rem == 0:
            return str(int_part)
        digits = str(rem * 5**self.frac_bits).rjust(self.frac_bits, "0")
        return f"{int_part}.{digits.rstrip('0')}"

    def __str__(self) -> str:
        return f"{self.binary_str()} ({self.decimal_str()})"

    def __repr__(self) -> str:
        return (
            f"FixedValue(magnitude={self.magnitude}, "
            f"int_bits={self.int_bits}, frac_bits={self.frac_bits})"
        )


def from_bits(magnitude: int, int_bits: int, frac_bits: int) -> FixedValue:
    """Construct from a raw magnitude; overflow-checked."""
    return FixedValue(magnitude, int_bits, frac_bits)


def from_fraction(
    value: Fraction | int, frac_bits: int, rounding: str = "exact"
) -> FixedValue:
    """Quantize a non-negative rational to `frac_bits` fraction bits.

    rounding: 'exact' raises if the value is not representable,
    'truncate' rounds toward zero, 'nearest' rounds to nearest with
    ties toward +inf. Integer bits are sized to fit (at least 1).
    """
    value = Fraction(value)
    if value < 0:
        raise DomainError(f"negative value {value} not representable")
    num, den = value.numerator, value.denominator
    scaled = num << frac_bits
    if rounding == "exact":
        if scaled % den:
            raise ValueError(f"{value} is not representable in {frac_bits} fraction bits")
        mag = scaled // den
    elif rounding == "truncate":
        mag = scaled // den
    elif rounding == "nearest":
        mag = (2 * scaled + den) // (2 * den)
    else:
        raise ValueError(f"unknown rounding mode {rounding!r}")
    int_bits = max(1, (mag >> frac_bits).bit_length())
    return FixedValue(mag, int_bits, frac_bits)


def parse_value(text: str) -> FixedValue:
    """Parse a CLI-style value: '1.01b' (binary) or '1.25' (decimal).

    Binary inputs map to their exact bit pattern. Decimal inputs are
    converted exactly when dyadic, otherwise rounded to nearest at
    DECIMAL_PARSE_FRAC_BITS fraction bits.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty value")
    if text.endswith(("b", "B")):
        body = text[:-1]
        int_part, _, frac_part = body.partition(".")
        try:
            mag = int(int_part + frac_part, 2) if (int_part + frac_part) else 0
        except ValueError:
            raise ValueError(f"invalid binary value {text!r}") from None
        return FixedValue(mag, max(1, len(int_part)), len(frac_part))
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"invalid decimal value {text!r}") from None
    den = value.denominator
    if den & (den - 1) == 0:
        return from_fraction(value, den.bit_length() - 1)
    return from_fraction(value, DECIMAL_PARSE_FRAC_BITS, rounding="nearest")


def mul_exact(a: FixedValue, b: FixedValue) -> FixedValue:
    """Exact product; widths add, no bits are lost."""
    return FixedValue(
        a.magnitude * b.magnitude,
        a.int_bits + b.int_bits,
        a.frac_bits + b.frac_bits,
    )


def truncate(a: FixedValue, frac_bits: int) -> FixedValue:
    """Drop low fraction bits (round toward zero; values are non-negative)."""
    if frac_bits > a.frac_bits:
        raise ValueError(f"cannot truncate {a.frac_bits} fraction bits to {frac_bits}")
    return FixedValue(a.magnitude >> (a.frac_bits - frac_bits), a.int_bits, frac_bits)


def round_nearest(a: FixedValue, frac_bits: int) -> FixedValue:
    """Round to `frac_bits` fraction bits, ties toward +inf.

    A carry out of the integer field widens int_bits by one.
    """
    if frac_bits > a.frac_bits:
        raise ValueError(f"cannot round {a.frac_bits} fraction bits to {frac_bits}")
    shift = a.frac_bits - frac_bits
    if shift == 0:
        return a
    mag = (a.magnitude + (1 << (shift - 1))) >> shift
    int_bits = a.int_bits
    if mag >= 1 << (int_bits + frac_bits):
        int_bits += 1
    return FixedValue(mag, int_bits, frac_bits)


def twos_complement_of(a: FixedValue, mode: str = "exact") -> FixedValue:
    """Compute 2 - value in the input's format.

    mode='exact' is the bitwise complement plus one ulp (2 - x);
    mode='ones' is the bitwise complement only (2 - x - ulp), the cheaper
    hardware shortcut. Requires 0 < value < 2.
    """
    if mode not in ("exact", "ones"):
        raise ValueError(f"unknown complement mode {mode!r}")
    if a.magnitude == 0:
        raise DomainError("complement of 0 is 2, which needs a wider integer field")
    if a.value >= 2:
        raise DomainError(f"complement input must be < 2, got {a.decimal_str()}")
    two = 2 << a.frac_bits
    mag = two - a.magnitude
    if mode == "ones":
        mag -= 1
    return FixedValue(mag, a.int_bits, a.frac_bits)


def zero_extend(a: FixedValue, target_frac_bits: int) -> FixedValue:
    """Append trailing fraction zeros; value unchanged.

    This is how a narrow operand is fed to a fixed-width multiplier.
    """
    if target_frac_bits < a.frac_bits:
        raise ValueError(
            f"cannot zero-extend {a.frac_bits} fraction bits down to {target_frac_bits}"
        )
    return FixedValue(
        a.magnitude << (target_frac_bits - a.frac_bits), a.int_bits, target_frac_bits
    )


def with_int_bits(a: FixedValue, int_bits: int) -> FixedValue:
    """Re-declare the integer field width; value unchanged, fit-checked."""
    if a.magnitude >= 1 << (int_bits + a.frac_bits):
        raise WidthOverflowError(
            f"value {a.decimal_str()} does not fit {int_bits} integer bits"
        )
    return FixedValue(a.magnitude, int_bits, a.frac_bits)


def to_rational(a: FixedValue) -> Fraction:
    """Exact value as a reduced fraction."""
    return a.value
