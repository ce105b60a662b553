"""
Unit tests for kugacert.quadmin.quad_min.
"""

import math

import numpy as np
import pytest
from sympy import Matrix

from kugacert.errors import InvalidInputError
from kugacert.linalg import QuadForm
from kugacert.quadmin import quad_min

# Gram matrix of the E8 root lattice.
E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]


@pytest.mark.parametrize(
    "rows, minimum",
    [
        ([[2, 0], [0, 2]], 2),
        ([[2, 1], [1, 2]], 2),
        ([[4, 3], [3, 4]], 2),
        ([[6, 5], [5, 6]], 2),
        ([[10, 1], [1, 10]], 10),
        (E8, 2),
    ],
)
def test_quad_min_values(rows, minimum):
    value, witness = quad_min(QuadForm(matrix=rows))
    assert value == minimum
    assert QuadForm(matrix=rows).value(witness) == minimum


def test_quad_min_finds_vector_off_the_diagonal():
    """[[4,3],[3,4]] has diagonal 4 but (1,-1) gives 2."""
    value, witness = quad_min(QuadForm(matrix=[[4, 3], [3, 4]]))
    assert value == 2
    assert witness == (1, -1)


def test_quad_min_degenerate_form_is_zero():
    value, witness = quad_min(QuadForm(matrix=[[2, 0], [0, 0]]))
    assert value == 0
    assert witness == (0, 1)


def test_quad_min_invariant_under_basis_change():
    q = QuadForm(matrix=[[2, 1], [1, 2]])
    moved = q.pullback([[1, 3], [0, 1]])
    assert quad_min(moved)[0] == quad_min(q)[0]


def test_quad_min_rejects_indefinite():
    with pytest.raises(InvalidInputError):
        quad_min(QuadForm(matrix=[[0, 1], [1, 0]]))


EXHAUSTIVE_BOX_LIMIT = 150_000


def _box_minimum(rows, bounds):
    """Minimum of x^t q x over nonzero x with |x_i| <= bounds[i]."""
    grids = np.meshgrid(*(np.arange(-b, b + 1) for b in bounds), indexing="ij")
    xs = np.stack([g.ravel() for g in grids], axis=1)
    xs = xs[np.any(xs != 0, axis=1)]
    q = np.array(rows, dtype=np.int64)
    return int(np.einsum("ni,ij,nj->n", xs, q, xs).min())


def _random_psd(rng):
    d = int(rng.integers(1, 5))
    k = int(rng.integers(max(1, d - 1), d + 3))
    a = rng.integers(-2, 3, size=(k, d))
    return (a.T @ a).tolist()


def test_quad_min_against_brute_force():
    rng = np.random.default_rng(2024)
    exhaustive = 0
    for _ in range(500):
        rows = _random_psd(rng)
        q = QuadForm(matrix=rows)
        value, witness = quad_min(q)
        assert any(witness)
        assert q.value(witness) == value
        m = Matrix(rows)
        if m.det() == 0:
            # the radical holds a nonzero lattice vector, wherever it lies
            assert value == 0
            assert m * Matrix(list(witness)) == Matrix.zeros(len(rows), 1)
            continue
        radius = min(rows[i][i] for i in range(len(rows)))
        inverse = m.inv()
        bounds = [math.isqrt(int(radius * inverse[i, i])) for i in range(len(rows))]
        if math.prod(2 * b + 1 for b in bounds) <= EXHAUSTIVE_BOX_LIMIT:
            exhaustive += 1
            assert value == _box_minimum(rows, bounds)
        else:
            assert value <= _box_minimum(rows, [4] * len(rows))
    assert exhaustive > 100
