"""
Unit tests for kugacert.refine.
"""

import pytest

from kugacert.cones import Cone
from kugacert.conditions import is_equidim_codim1
from kugacert.errors import InvalidInputError, UnsupportedDimensionError
from kugacert.fans import Fan, check_fan_structure
from kugacert.lifting import LiftedPoint, base_fan, base_projection, group_act, lifted_fan
from kugacert.refine import refine_to_smooth, stellar_subdivide
from kugacert.toric import is_smooth


def _all_smooth(fan: Fan) -> bool:
    return all(is_smooth(c) for c in fan.cones)


class TestStellarSubdivide:
    """Star subdivision at a lattice point."""

    def test_splits_containing_cone(self):
        fan = Fan.from_generators(2, [[(1, 0), (0, 1)]])
        refined = stellar_subdivide(fan, (1, 1))
        assert [c.generators for c in refined.canonical().cones] == [((0, 1), (1, 1)), ((1, 0), (1, 1))]

    def test_point_is_made_primitive(self):
        fan = Fan.from_generators(2, [[(1, 0), (0, 1)]])
        refined = stellar_subdivide(fan, (2, 2))
        assert (1, 1) in refined.rays()

    def test_leaves_other_cones(self, staircase_fan):
        refined = stellar_subdivide(staircase_fan, (2, 1))
        assert len(refined.cones) == 5
        assert refined.layout == staircase_fan.layout

    def test_checks_length(self):
        with pytest.raises(InvalidInputError):
            stellar_subdivide(Fan.from_generators(2, [[(1, 0)]]), (1, 0, 0))


class TestRefineToSmooth:
    """Smooth refinements in dimension <= 3."""

    def test_smooth_fan_unchanged(self, staircase_fan):
        assert refine_to_smooth(staircase_fan) is staircase_fan

    def test_two_dimensional_resolution(self, a2_cone):
        refined = refine_to_smooth(Fan(ambient_rank=2, cones=(a2_cone,)))
        assert _all_smooth(refined)
        assert refined.rays() == [(1, 0), (1, 1), (1, 2), (1, 3)]

    def test_simplicial_three_dimensional(self):
        fan = Fan.from_generators(3, [[(1, 0, 0), (0, 1, 0), (1, 1, 2)]])
        refined = refine_to_smooth(fan)
        assert _all_smooth(refined)
        assert check_fan_structure(refined).passed

    def test_unit_cubes_triangulated(self):
        tilde = lifted_fan(1, 2, window=2)
        refined = refine_to_smooth(tilde)
        assert _all_smooth(refined)
        assert refined.rays() == tilde.rays()

    def test_refinement_can_break_equidimensionality(self):
        """The resolving ray of cone(xi xi^t) for xi = (1,0), (1,2) has a rank-two form."""
        tilde = Fan.from_generators(
            5, [[(1, 0, 0, 0, 0), (1, 2, 4, 0, 0)]], projection=base_projection(2, 1), layout=(2, 1),
        )
        base = base_fan(2, 3)
        assert is_equidim_codim1(tilde, base).passed
        refined = refine_to_smooth(tilde)
        assert _all_smooth(refined)
        result = is_equidim_codim1(refined, base)
        assert not result.passed
        assert result.offending == [[1, 1, 2, 0, 0]]

    def test_rejects_high_dimension(self):
        cone = Cone.of((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 2))
        with pytest.raises(UnsupportedDimensionError):
            refine_to_smooth(Fan(ambient_rank=4, cones=(cone,)))

    def test_smooth_high_dimension_allowed(self):
        cone = Cone.of((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        fan = Fan(ambient_rank=4, cones=(cone,))
        assert refine_to_smooth(fan) is fan


def _translate(v, x):
    return group_act([[1]], x, LiftedPoint.from_vector(v, 1, 2)).to_vector()


@pytest.mark.parametrize("x", [[[1], [0]], [[0], [1]], [[1], [1]], [[-1], [1]]])
def test_refinement_commutes_with_translation(x):
    tilde = lifted_fan(1, 2, window=3)
    refined = refine_to_smooth(tilde)
    assert _all_smooth(refined)
    originals = {c.generators for c in tilde.cones}
    pairs = 0
    for cone in tilde.cones:
        image = tuple(sorted(_translate(v, x) for v in cone.generators))
        if image not in originals:
            continue
        pairs += 1
        target = Cone(ambient_rank=3, generators=image)
        inside = {c.generators for c in refined.cones if all(cone.contains(v) for v in c.generators)}
        inside_image = {c.generators for c in refined.cones if all(target.contains(v) for v in c.generators)}
        assert {tuple(sorted(_translate(v, x) for v in gens)) for gens in inside} == inside_image
    assert pairs > 0
