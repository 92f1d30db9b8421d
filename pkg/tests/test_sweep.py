"""Grid sweeps: exhaustive accuracy numbers, CSV round trip, sampling."""

from fractions import Fraction

import pytest

from golddiv.goldschmidt import GoldschmidtConfig
from golddiv.sweep import (
    SAMPLE_SEED,
    default_target,
    dyadic_decimal_str,
    grid_values,
    parse_csv,
    render_csv,
    render_summary,
    run_sweep,
)


class TestGrid:
    def test_exhaustive_axis(self):
        values = grid_values(2)
        assert [v.value for v in values] == [1, Fraction(5, 4), Fraction(3, 2), Fraction(7, 4)]

    def test_exhaustive_size(self):
        assert len(grid_values(8)) == 256

    def test_sampled_axis_is_stratified_and_deterministic(self):
        a = grid_values(9, density=8)
        b = grid_values(9, density=8)
        assert a == b
        assert len(a) == 8
        values = [v.value for v in a]
        assert all(x < y for x, y in zip(values, values[1:]))
        assert all(1 <= v < 2 for v in values)


class TestRunSweep:
    def test_exhaustive_p2(self):
        result, rows = run_sweep(GoldschmidtConfig(p=2, iterations=1))
        assert result.total_pairs == 16
        assert len(rows) == 16
        assert result.config["grid"] == "exhaustive"
        assert result.worst_rel_error >= result.mean_rel_error >= 0
        for row in rows:
            assert row.q_final.value * row.d.value == (1 - row.one_minus_r) * row.n.value

    def test_seed_only_matches_table_error(self, table_p4):
        # iterations=0 is the table test restated; the representable-D
        # worst sits one product ulp under the endpoint measurement
        result, _ = run_sweep(GoldschmidtConfig(p=4, iterations=0), table=table_p4)
        assert result.worst_rel_error == Fraction(19, 512)
        assert table_p4.max_seed_error - result.worst_rel_error == Fraction(1, 512)

    def test_exceeding_counter(self, table_p4):
        result, _ = run_sweep(
            GoldschmidtConfig(p=4, iterations=0), table=table_p4, target=Fraction(1, 64)
        )
        assert 0 < result.pairs_exceeding_target < result.total_pairs

    def test_sampled_sweep(self):
        result, rows = run_sweep(GoldschmidtConfig(p=9, iterations=1), density=4)
        assert result.total_pairs == 16
        assert result.config["grid"] == "stratified"
        assert result.config["sample_seed"] == SAMPLE_SEED
        assert result.config["density"] == 4


class TestTarget:
    def test_default_target(self):
        assert default_target(4, 3) == Fraction(1, 1 << 32)
        assert default_target(8, 0) == Fraction(1, 256)


class TestCsv:
    def test_header_and_round_trip(self):
        _, rows = run_sweep(GoldschmidtConfig(p=2, iterations=1))
        text = render_csv(rows)
        assert text.splitlines()[0] == "n_bits,d_bits,n_dec,d_dec,q_final_dec,rel_error,one_minus_r"
        parsed = parse_csv(text)
        assert len(parsed) == len(rows)
        for row, back in zip(rows, parsed):
            assert back["n"] == row.n.value
            assert back["d"] == row.d.value
            assert back["q_final"] == row.q_final.value
            assert back["rel_error"] == row.rel_error
            assert back["one_minus_r"] == row.one_minus_r

    def test_rows_satisfy_cross_ratio_after_parsing(self):
        _, rows = run_sweep(GoldschmidtConfig(p=2, iterations=1))
        for back in parse_csv(render_csv(rows)):
            r_final = 1 - back["one_minus_r"]
            assert back["q_final"] * back["d"] == r_final * back["n"]

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError):
            parse_csv("a,b,c\n1,2,3\n")


class TestDyadicDecimal:
    @pytest.mark.parametrize(
        "value,text",
        [
            (Fraction(1, 32), "0.03125"),
            (Fraction(-1, 32), "-0.03125"),
            (Fraction(0), "0"),
            (Fraction(3), "3"),
            (Fraction(255, 256), "0.99609375"),
        ],
    )
    def test_values(self, value, text):
        assert dyadic_decimal_str(value) == text

    def test_non_dyadic_rejected(self):
        with pytest.raises(ValueError):
            dyadic_decimal_str(Fraction(1, 3))


class TestSummary:
    def test_render(self, table_p4):
        result, _ = run_sweep(GoldschmidtConfig(p=4, iterations=3), table=table_p4)
        text = render_summary(result)
        assert "pairs = 256" in text
        assert "worst rel_error = 16983563041/4722366482869645213696" in text
        assert "pairs exceeding target 1/4294967296: 0" in text
