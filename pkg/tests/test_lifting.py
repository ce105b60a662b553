"""
Unit tests for kugacert.lifting: lifted points, perfect cones, lifted fans
and the group action.
"""

import pytest
from pydantic import ValidationError
from sympy import Matrix

from kugacert.errors import EmptyFanError, InvalidInputError, UnsupportedRankError
from kugacert.lifting import (
    PRINCIPAL_TRIANGLE,
    LiftedPoint,
    base_fan,
    base_projection,
    group_act,
    in_cone_C,
    in_cone_C_tilde,
    lifted_action_matrix,
    lifted_fan,
    lifted_rank,
    perfect_cone_fan,
    perfect_triangles,
    rank1_lift_generators,
    ray_permutation_check,
    sym_coordinates,
)
from kugacert.linalg import QuadForm


# ---------------------------------------------------------------------------
# Coordinates and points
# ---------------------------------------------------------------------------

def test_sym_coordinates_and_rank():
    assert sym_coordinates(2) == [(0, 0), (0, 1), (1, 1)]
    assert lifted_rank(1, 1) == 2
    assert lifted_rank(2, 2) == 7
    assert base_projection(1, 2) == ((1, 0, 0),)


class TestLiftedPoint:
    """(b; l_1, ..., l_n) points and their coordinates."""

    def test_vector_layout(self):
        q = LiftedPoint(b=[[1, 1], [1, 1]], ells=[[2, 2]])
        assert q.to_vector() == (1, 1, 1, 2, 2)
        assert LiftedPoint.from_vector(q.to_vector(), 2, 1) == q

    def test_rejects_fractional_covector(self):
        with pytest.raises(ValidationError):
            LiftedPoint(b=[[1]], ells=[[0.5]])

    def test_rejects_wrong_covector_length(self):
        with pytest.raises(ValidationError):
            LiftedPoint(b=[[1, 0], [0, 1]], ells=[[1]])

    def test_from_vector_checks_length(self):
        with pytest.raises(InvalidInputError):
            LiftedPoint.from_vector((1, 2, 3), 1, 1)


def test_in_cone_C_tilde():
    assert in_cone_C(QuadForm(matrix=[[1, 1], [1, 1]]))
    assert in_cone_C_tilde(LiftedPoint(b=[[1, 1], [1, 1]], ells=[[3, 3]]))
    # the covector must vanish on the radical (1, -1)
    assert not in_cone_C_tilde(LiftedPoint(b=[[1, 1], [1, 1]], ells=[[1, 0]]))
    assert not in_cone_C_tilde(LiftedPoint(b=[[0]], ells=[[1]]))


def test_rank1_lift_generators():
    points = rank1_lift_generators((1, 1), 1, 1)
    assert len(points) == 3
    assert all(in_cone_C_tilde(p) for p in points)
    with pytest.raises(InvalidInputError):
        rank1_lift_generators((2, 2), 1, 1)
    with pytest.raises(InvalidInputError):
        rank1_lift_generators((1, 0), 1, 0)


# ---------------------------------------------------------------------------
# Perfect cones
# ---------------------------------------------------------------------------

class TestPerfectCones:
    """Farey triangles for g'' = 2 and the trivial fan for g'' = 1."""

    def test_window_one_is_principal_and_neighbour(self):
        triangles = perfect_triangles(window=1)
        assert tuple(sorted(PRINCIPAL_TRIANGLE)) in triangles
        assert ((0, 1), (1, -1), (1, 0)) in triangles
        assert len(triangles) == 2

    def test_word_length_bounds_flips(self):
        assert len(perfect_triangles(word_length=0)) == 1
        assert len(perfect_triangles(word_length=1)) == 4

    def test_triangles_are_unimodular(self):
        for a, b, c in perfect_triangles(window=2):
            for u, v in ((a, b), (b, c), (a, c)):
                assert abs(u[0] * v[1] - u[1] * v[0]) == 1

    def test_perfect_cone_fan_generators_are_rank_one(self):
        fan = perfect_cone_fan(2, window=1)
        assert fan.ambient_rank == 3
        assert ((0, 0, 1), (1, 0, 0), (1, 1, 1)) in [c.generators for c in fan.cones]

    def test_g1_fan(self):
        fan = perfect_cone_fan(1)
        assert [c.generators for c in fan.cones] == [((1,),)]

    def test_unsupported_rank(self):
        with pytest.raises(UnsupportedRankError):
            perfect_cone_fan(3)
        with pytest.raises(InvalidInputError):
            perfect_cone_fan(0)


# ---------------------------------------------------------------------------
# Lifted fans
# ---------------------------------------------------------------------------

class TestLiftedFan:
    """Nearest-integer lifts of the perfect cones."""

    def test_staircase(self, staircase_fan):
        tilde = lifted_fan(1, 1, window=3)
        assert tilde.canonical().cones == staircase_fan.canonical().cones
        assert tilde.layout == (1, 1)
        assert tilde.projection == ((1, 0),)

    def test_window_two_staircase(self):
        tilde = lifted_fan(1, 1, window=2)
        assert tilde.rays() == [(1, -1), (1, 0), (1, 1)]

    def test_unit_cubes_for_n_two(self):
        tilde = lifted_fan(1, 2, window=3)
        assert len(tilde.cones) == 16
        assert all(len(c.generators) == 4 and not c.is_simplicial for c in tilde.cones)

    def test_g2_fan_sits_over_base(self):
        tilde = lifted_fan(2, 1, window=2)
        base = base_fan(2, 2)
        assert tilde.ambient_rank == 5
        images = {tilde.project(r) for r in tilde.rays()}
        assert images <= set(base.rays())

    def test_bad_arguments(self):
        with pytest.raises(InvalidInputError):
            lifted_fan(1, 1, window=1)
        with pytest.raises(InvalidInputError):
            lifted_fan(1, 0, window=2)
        with pytest.raises(UnsupportedRankError):
            lifted_fan(3, 1, window=2)

    def test_empty_fan_error_is_usage_error(self):
        assert EmptyFanError.exit_code == 2


# ---------------------------------------------------------------------------
# Group action
# ---------------------------------------------------------------------------

class TestGroupAction:
    """(h, x) acting on lifted points and on ambient coordinates."""

    def test_translation_shifts_covector(self):
        q = LiftedPoint(b=[[1]], ells=[[0]])
        image = group_act([[1]], [[1]], q)
        assert image.ells == ((1,),)
        assert image.b == q.b

    def test_action_matrix_matches_pointwise_action(self):
        h, x = [[1, 1], [0, 1]], [[1, 0]]
        m = lifted_action_matrix(h, x, 2, 1)
        q = LiftedPoint(b=[[1, 0], [0, 0]], ells=[[1, 0]])
        expected = group_act(h, x, q).to_vector()
        assert tuple(int(v) for v in m * Matrix(list(q.to_vector()))) == expected

    def test_rejects_non_unimodular(self):
        with pytest.raises(InvalidInputError):
            group_act([[2]], None, LiftedPoint(b=[[1]], ells=[[0]]))

    def test_ray_permutation_translation_shifts_staircase(self, staircase_fan):
        # x = 1 maps (1, c) to (1, c + 1): not a symmetry of a finite window
        u = lifted_action_matrix([[1]], [[1]], 1, 1)
        with pytest.raises(InvalidInputError):
            ray_permutation_check(u, staircase_fan)

    @pytest.mark.parametrize("window", [3, 4])
    def test_translations_act_simply_transitively_on_staircase(self, window):
        tilde = lifted_fan(1, 1, window=window)
        cones = {c.generators for c in tilde.cones}
        for source in cones:
            for target in cones:
                shifts = []
                for t in range(-2 * window, 2 * window + 1):
                    u = lifted_action_matrix([[1]], [[t]], 1, 1)
                    image = tuple(sorted(tuple(int(v) for v in u * Matrix(list(g))) for g in source))
                    if image == target:
                        shifts.append(t)
                assert len(shifts) == 1

    def test_ray_permutation_reflection(self, staircase_fan):
        u = lifted_action_matrix([[-1]], None, 1, 1)
        result = ray_permutation_check(u, staircase_fan)
        assert result.passed
        assert len(result.details["swaps"]) == 2
