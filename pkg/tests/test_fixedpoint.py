"""Arithmetic substrate: worked values, error cases, and algebraic laws.

Property tests run random widths up to 64 fraction bits; the short-width
laws (<= 6 fraction bits) are checked exhaustively on top.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golddiv.fixedpoint import (
    DECIMAL_PARSE_FRAC_BITS,
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
    with_int_bits,
    zero_extend,
)


def fx(magnitude, int_bits, frac_bits):
    return from_bits(magnitude, int_bits, frac_bits)


class TestConstruction:
    def test_zero(self):
        assert fx(0, 1, 3).value == 0

    def test_value_is_magnitude_scaled(self):
        assert fx(12, 1, 3).value == Fraction(3, 2)

    def test_overflow_rejected(self):
        with pytest.raises(WidthOverflowError):
            fx(16, 1, 3)

    def test_negative_magnitude_rejected(self):
        with pytest.raises(ValueError):
            fx(-1, 1, 3)

    def test_zero_int_bits_rejected(self):
        with pytest.raises(ValueError):
            fx(0, 0, 3)

    def test_equality_is_format_independent(self):
        assert fx(12, 1, 3) == fx(96, 2, 6)
        assert fx(12, 1, 3) != fx(13, 1, 3)
        assert hash(fx(12, 1, 3)) == hash(fx(96, 2, 6))

    def test_ulp(self):
        assert fx(0, 1, 4).ulp == Fraction(1, 16)


class TestRendering:
    def test_binary_and_decimal(self):
        v = fx(15, 1, 4)
        assert v.binary_str() == "0.1111"
        assert v.decimal_str() == "0.9375"
        assert str(v) == "0.1111 (0.9375)"

    def test_integer_only(self):
        assert fx(2, 2, 0).binary_str() == "10"
        assert fx(2, 2, 0).decimal_str() == "2"

    def test_int_field_zero_padded(self):
        assert fx(3, 2, 1).binary_str() == "01.1"

    def test_trailing_decimal_zeros_stripped(self):
        assert fx(8, 1, 4).decimal_str() == "0.5"


class TestParse:
    def test_binary_suffix_is_exact(self):
        v = parse_value("1.01b")
        assert (v.magnitude, v.int_bits, v.frac_bits) == (5, 1, 2)

    def test_binary_fraction_only(self):
        assert parse_value(".11b").value == Fraction(3, 4)

    def test_dyadic_decimal_is_exact_and_minimal(self):
        v = parse_value("1.25")
        assert (v.magnitude, v.frac_bits) == (5, 2)

    def test_non_dyadic_decimal_rounds_at_32_bits(self):
        v = parse_value("1.999")
        assert v.frac_bits == DECIMAL_PARSE_FRAC_BITS
        assert v.magnitude == 8585639625  # round(1.999 * 2**32)

    def test_integer(self):
        assert parse_value("1").value == 1

    @pytest.mark.parametrize("bad", ["", "abc", "1.2.3", "1.0z1b", "--1"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(ValueError):
            parse_value(bad)


class TestMulExact:
    def test_identity(self):
        assert mul_exact(fx(3, 1, 1), fx(1, 1, 0)).value == Fraction(3, 2)

    def test_exact_product(self):
        out = mul_exact(fx(5, 1, 2), fx(3, 1, 2))
        assert out.value == Fraction(15, 16)
        assert out.frac_bits == 4

    def test_widths_add(self):
        # 1.111 x 1.111 = 11.100001: 8 significant bits from two 4-bit operands
        out = mul_exact(fx(15, 1, 3), fx(15, 1, 3))
        assert out.magnitude == 225
        assert (out.int_bits, out.frac_bits) == (2, 6)
        assert out.value == Fraction(225, 64)
        assert out.binary_str() == "11.100001"


class TestTruncate:
    def test_already_representable(self):
        assert truncate(fx(15, 1, 4), 4).value == Fraction(15, 16)

    def test_drops_low_bits(self):
        assert truncate(fx(255, 1, 8), 4).value == Fraction(15, 16)

    def test_to_integer(self):
        assert truncate(fx(3, 1, 1), 0).value == 1

    def test_widening_rejected(self):
        with pytest.raises(ValueError):
            truncate(fx(3, 1, 1), 2)


class TestRoundNearest:
    def test_exact_passthrough(self):
        assert round_nearest(fx(15, 1, 4), 4).value == Fraction(15, 16)

    def test_tie_rounds_up(self):
        # 0.65625 * 16 = 10.5 -> 11/16
        assert round_nearest(fx(21, 1, 5), 4).value == Fraction(11, 16)

    def test_carry_staying_inside_integer_field(self):
        # 0.11111111 -> 1.0000 still fits one integer bit
        out = round_nearest(fx(255, 1, 8), 4)
        assert out.value == 1
        assert out.int_bits == 1

    def test_carry_widens_integer_field(self):
        # 1.1111 -> 10.00 needs a second integer bit
        out = round_nearest(fx(31, 1, 4), 2)
        assert out.value == 2
        assert out.int_bits == 2

    def test_widening_rejected(self):
        with pytest.raises(ValueError):
            round_nearest(fx(1, 1, 1), 2)


class TestTwosComplement:
    def test_fixed_point_at_one(self):
        assert twos_complement_of(fx(16, 1, 4)).value == 1

    def test_exact_mode(self):
        out = twos_complement_of(fx(15, 1, 4))
        assert out.value == Fraction(17, 16)
        assert (out.int_bits, out.frac_bits) == (1, 4)

    def test_ones_mode(self):
        assert twos_complement_of(fx(15, 1, 4), "ones").value == 1

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            twos_complement_of(fx(0, 1, 4))

    def test_two_or_more_rejected(self):
        with pytest.raises(DomainError):
            twos_complement_of(fx(2, 2, 0))

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            twos_complement_of(fx(15, 1, 4), "nines")


class TestZeroExtend:
    def test_value_preserved(self):
        out = zero_extend(fx(12, 1, 3), 8)
        assert out.magnitude == 384
        assert out.value == Fraction(3, 2)

    def test_zero(self):
        assert zero_extend(fx(0, 1, 0), 8).value == 0

    def test_example(self):
        assert zero_extend(fx(17, 1, 4), 10).magnitude == 1088

    def test_narrowing_rejected(self):
        with pytest.raises(ValueError):
            zero_extend(fx(12, 1, 3), 2)


class TestWithIntBits:
    def test_redeclare(self):
        assert with_int_bits(fx(3, 2, 1), 1).int_bits == 1

    def test_fit_checked(self):
        with pytest.raises(WidthOverflowError):
            with_int_bits(fx(5, 2, 1), 1)


class TestToRational:
    @pytest.mark.parametrize(
        "mag,i,f,expect",
        [(3, 1, 1, Fraction(3, 2)), (15, 1, 4, Fraction(15, 16)), (0, 1, 4, Fraction(0))],
    )
    def test_values(self, mag, i, f, expect):
        assert to_rational(fx(mag, i, f)) == expect


class TestFromFraction:
    def test_exact_rejects_unrepresentable(self):
        with pytest.raises(ValueError):
            from_fraction(Fraction(1, 3), 4)

    def test_nearest(self):
        assert from_fraction(Fraction(2, 3), 4, "nearest").value == Fraction(11, 16)

    def test_truncate(self):
        assert from_fraction(Fraction(2, 3), 4, "truncate").value == Fraction(10, 16)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            from_fraction(Fraction(-1, 2), 4)


@st.composite
def fixed_values(draw, max_int_bits=3, max_frac_bits=64):
    int_bits = draw(st.integers(1, max_int_bits))
    frac_bits = draw(st.integers(0, max_frac_bits))
    magnitude = draw(st.integers(0, (1 << (int_bits + frac_bits)) - 1))
    return from_bits(magnitude, int_bits, frac_bits)


class TestProperties:
    @given(fixed_values(), fixed_values())
    def test_mul_exact_matches_rationals(self, a, b):
        assert to_rational(mul_exact(a, b)) == to_rational(a) * to_rational(b)

    @given(fixed_values(), st.data())
    def test_truncate_bound(self, a, data):
        f = data.draw(st.integers(0, a.frac_bits))
        t = truncate(a, f)
        assert 0 <= a.value - t.value < Fraction(1, 1 << f)

    @given(fixed_values(), st.data())
    def test_round_nearest_bound_and_tie_direction(self, a, data):
        f = data.draw(st.integers(0, a.frac_bits))
        r = round_nearest(a, f)
        assert abs(r.value - a.value) <= Fraction(1, 1 << (f + 1))
        if abs(r.value - a.value) == Fraction(1, 1 << (f + 1)):
            assert r.value > a.value

    @given(fixed_values())
    def test_complement_sums(self, a):
        if not 0 < a.value < 2:
            return
        assert twos_complement_of(a, "exact").value + a.value == 2
        assert twos_complement_of(a, "ones").value + a.value == 2 - a.ulp

    @given(fixed_values(), st.data())
    def test_zero_extend_preserves_rational(self, a, data):
        target = data.draw(st.integers(a.frac_bits, a.frac_bits + 16))
        assert to_rational(zero_extend(a, target)) == to_rational(a)

    @settings(deadline=None)
    @given(st.integers(0, 6), st.data())
    def test_format_independent_equality(self, extra, data):
        a = data.draw(fixed_values(max_frac_bits=16))
        assert zero_extend(a, a.frac_bits + extra) == a


class TestExhaustiveShortWidths:
    def test_complement_is_bitwise_complement_plus_ulp(self):
        # at int_bits=1 the exact complement equals ~magnitude + 1 in the
        # (1+f)-bit field, which is what the hardware builds
        for f in range(0, 7):
            mask = (1 << (1 + f)) - 1
            for mag in range(1, 1 << (1 + f)):
                a = from_bits(mag, 1, f)
                out = twos_complement_of(a)
                assert out.magnitude == ((~mag) & mask) + 1

    def test_truncate_and_round_laws(self):
        for f in range(0, 7):
            for mag in range(0, 1 << (1 + f)):
                a = from_bits(mag, 1, f)
                for target in range(0, f + 1):
                    t = truncate(a, target)
                    assert 0 <= a.value - t.value < Fraction(1, 1 << target)
                    r = round_nearest(a, target)
                    assert abs(r.value - a.value) <= Fraction(1, 1 << (target + 1))

    def test_complement_sums_exhaustive(self):
        for f in range(0, 7):
            for mag in range(1, 1 << (1 + f)):
                a = from_bits(mag, 1, f)
                assert twos_complement_of(a).value + a.value == 2
                assert twos_complement_of(a, "ones").value + a.value == 2 - a.ulp
