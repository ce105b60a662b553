"""
Unit tests for kugacert.cyclotomic.
"""

import itertools

import pytest
from sympy import Matrix, Poly, Rational, Symbol, cyclotomic_poly, diag

from kugacert.cyclotomic import (
    EigenProfile,
    conjugate_pairs,
    cyclotomic_factor,
    eigen_profile,
    multiplicative_order,
    normalize_entry,
    primitive_roots,
)
from kugacert.errors import InvalidInputError, NotTorsionError

x = Symbol("x")


def test_normalize_entry():
    assert normalize_entry(4, 6) == (2, 3)
    assert normalize_entry(-1, 4) == (3, 4)
    assert normalize_entry(6, 6) == (0, 1)
    with pytest.raises(InvalidInputError):
        normalize_entry(1, 0)


def test_primitive_roots():
    assert primitive_roots(1) == [(0, 1)]
    assert primitive_roots(6) == [(1, 6), (5, 6)]
    assert len(primitive_roots(12)) == 4


class TestEigenProfile:
    """Sorted multisets of rotation numbers."""

    def test_entries_sorted_and_reduced(self):
        p = EigenProfile.of((5, 6), (2, 4), (1, 6))
        assert p.entries == ((1, 6), (1, 2), (5, 6))

    def test_age_and_order(self):
        p = EigenProfile.from_cyclotomic([(6, 1)])
        assert p.age() == 1
        assert p.order() == 6
        assert EigenProfile.of((1, 4)).age() == Rational(1, 4)

    def test_conjugation_closed(self):
        assert EigenProfile.from_cyclotomic([(3, 1), (2, 2)]).is_conjugation_closed()
        assert not EigenProfile.of((1, 3)).is_conjugation_closed()

    def test_render_and_nontrivial(self):
        p = EigenProfile.of((0, 1), (1, 2))
        assert p.render() == ["0/1", "1/2"]
        assert p.nontrivial() == ((1, 2),)
        assert p.is_all((0, 1)) is False


def test_cyclotomic_factor_of_product():
    factors, remainder = cyclotomic_factor(cyclotomic_poly(4, x) * cyclotomic_poly(1, x) ** 2)
    assert factors == [(1, 2), (4, 1)]
    assert remainder.as_expr() == 1


def test_cyclotomic_factor_keeps_non_cyclotomic_part():
    factors, remainder = cyclotomic_factor(x**2 - 3 * x + 1)
    assert factors == []
    assert remainder.degree() == 2


@pytest.mark.parametrize(
    "rows, order",
    [
        ([[1, 0], [0, 1]], 1),
        ([[-1, 0], [0, -1]], 2),
        ([[0, -1], [1, -1]], 3),
        ([[0, -1], [1, 0]], 4),
        ([[1, -1], [1, 0]], 6),
    ],
)
def test_multiplicative_order_of_sl2_torsion(rows, order):
    assert multiplicative_order(Matrix(rows)) == order


def test_multiplicative_order_rejects_infinite_order():
    with pytest.raises(NotTorsionError):
        multiplicative_order(Matrix([[2, 1], [1, 1]]))
    with pytest.raises(NotTorsionError):
        # unipotent: cyclotomic characteristic polynomial, infinite order
        multiplicative_order(Matrix([[1, 1], [0, 1]]))


def test_eigen_profile_of_order_six():
    p = eigen_profile(Matrix([[1, -1], [1, 0]]))
    assert p.entries == ((1, 6), (5, 6))


def test_conjugate_pairs():
    p = EigenProfile.from_cyclotomic([(4, 1), (2, 2)])
    assert conjugate_pairs(p) == [((1, 4), (3, 4)), ((1, 2), (1, 2))]
    with pytest.raises(InvalidInputError):
        conjugate_pairs(EigenProfile.of((1, 2)))


def _companion(d: int) -> Matrix:
    coeffs = [int(c) for c in Poly(cyclotomic_poly(d, x), x).all_coeffs()][::-1]
    k = len(coeffs) - 1
    return Matrix(k, k, lambda i, j: int(i == j + 1) - (coeffs[i] if j == k - 1 else 0))


def _torsion_matrices():
    """Block sums of cyclotomic companions, also conjugated by a unipotent matrix."""
    orders = [1, 2, 3, 4, 5, 6, 8, 10, 12]
    for a, b in itertools.combinations_with_replacement(orders, 2):
        m = diag(_companion(a), _companion(b))
        if m.rows > 6:
            continue
        u = Matrix(m.rows, m.rows, lambda i, j: int(bool(j >= i)))
        yield m
        yield u * m * u.inv()


def test_eigen_profiles_of_torsion_matrices():
    count = 0
    for m in _torsion_matrices():
        profile = eigen_profile(m)
        assert len(profile) == m.rows
        assert profile.is_conjugation_closed()
        assert profile.order() == multiplicative_order(m)
        count += 1
    assert count > 50
