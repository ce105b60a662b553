"""
Unit tests for kugacert.kodaira: the rule chain and the verdict table.
"""

import pytest

from kugacert.errors import InvalidInputError, OutOfRangeError, UndecidableError
from kugacert.kodaira import kdim_table, kodaira_dimension

ZERO = {(2, 7), (3, 5), (4, 3)}
BELOW_CANONICAL_BOUND = {(2, 5), (2, 6), (3, 4)}


def _expected(g: int, n: int) -> str:
    if g == 1:
        return "MinusInfinity"
    if (g, n) in ZERO:
        return "Zero"
    if g + n >= 7 and (g, n) not in BELOW_CANONICAL_BOUND:
        return "GeneralType"
    return "MinusInfinity"


@pytest.mark.parametrize("g", range(1, 7))
@pytest.mark.parametrize("n", range(1, 13))
def test_verdict_table(g, n):
    verdict = kodaira_dimension(g, n)
    assert verdict.kind == _expected(g, n)
    if verdict.kind == "GeneralType":
        assert verdict.dimension == g * (g + 1) // 2
    assert not verdict.informational


class TestRules:
    """The rule chain and its justifications."""

    def test_g1_rational_fibres(self):
        verdict = kodaira_dimension(1, 5)
        assert verdict.render() == "kappa = -infinity (fibres rational)"
        assert verdict.justification[0].startswith("g = 1:")

    def test_large_g_general_type(self):
        verdict = kodaira_dimension(7, 1)
        assert verdict.kind == "GeneralType"
        assert verdict.dimension == 28
        assert verdict.render() == "kappa = 28 (general type)"

    def test_zero_is_rigid(self):
        verdict = kodaira_dimension(4, 3)
        assert verdict.render() == "kappa = 0"
        assert verdict.justification == ["s_min(4) = 8 = 8 = g + n + 1, minimiser rigid"]

    def test_minus_infinity_from_slope(self):
        verdict = kodaira_dimension(5, 1)
        assert verdict.justification == ["s_min(5) = 54/7 > 7 = g + n + 1"]

    def test_g6_uses_n0_prime_bound(self):
        verdict = kodaira_dimension(6, 1)
        assert verdict.kind == "GeneralType"
        assert "550/73" in verdict.justification[0]

    def test_n_zero_is_informational(self):
        verdict = kodaira_dimension(2, 0)
        assert verdict.informational
        assert verdict.kind == "MinusInfinity"

    def test_g6_n0_undecidable(self):
        with pytest.raises(UndecidableError):
            kodaira_dimension(6, 0)

    def test_bad_arguments(self):
        with pytest.raises(InvalidInputError):
            kodaira_dimension(0, 1)
        with pytest.raises(InvalidInputError):
            kodaira_dimension(2, -1)


class TestTable:
    """Grids of short verdicts."""

    def test_shape_and_render(self):
        table = kdim_table(2, 8)
        assert len(table.rows) == 2
        assert [v.short for v in table.rows[1]] == ["-inf"] * 6 + ["0", "3"]
        lines = table.render().splitlines()
        assert len(lines) == 3
        assert lines[2].split() == ["2"] + ["-inf"] * 6 + ["0", "3"]

    def test_limits(self):
        with pytest.raises(OutOfRangeError):
            kdim_table(10, 1)
        with pytest.raises(OutOfRangeError):
            kdim_table(1, 21)
        with pytest.raises(InvalidInputError):
            kdim_table(0, 1)

    def test_full_table_decides_everything(self):
        table = kdim_table(9, 20)
        assert all(v.kind in ("GeneralType", "Zero", "MinusInfinity") for row in table.rows for v in row)


@pytest.mark.parametrize("g", range(2, 7))
def test_general_type_is_monotone_in_n(g):
    kinds = [kodaira_dimension(g, n).kind for n in range(1, 21)]
    first = kinds.index("GeneralType")
    assert all(k == "GeneralType" for k in kinds[first:])
