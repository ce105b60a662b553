"""
Unit tests for kugacert.scan.
"""

import pytest

from kugacert.errors import InvalidInputError
from kugacert.scan import (
    enumerate_cyclotomic_profiles,
    gamma_kinds,
    interior_singularity_table,
    rt_scan,
    stabilizer_profiles,
    u_kinds,
    u_nontrivial_bound_check,
)


class TestEnumeration:
    """Cyclotomic products and the kinds built from them."""

    def test_degree_two_profiles(self):
        profiles = enumerate_cyclotomic_profiles(2, 12)
        assert len(profiles) == 6
        assert len(enumerate_cyclotomic_profiles(2, 12, symplectic=True)) == 5

    def test_degree_zero(self):
        assert [p.entries for p in enumerate_cyclotomic_profiles(0)] == [()]

    def test_d_max_limits_orders(self):
        assert all(p.order() <= 4 for p in enumerate_cyclotomic_profiles(2, 4))

    def test_gamma_kinds(self):
        assert [k.kind for k in gamma_kinds(0)] == ["Identity"]
        kinds = gamma_kinds(1)
        assert len(kinds) == 5
        assert sorted(k.profile.order() for k in kinds if k.kind == "Elliptic") == [3, 4, 6]

    def test_u_kinds(self):
        assert len(u_kinds(1)) == 2
        assert len(u_kinds(2)) == 6

    def test_profile_count_for_g_two(self):
        profiles = stabilizer_profiles(2, 3)
        assert len(profiles) == 14
        assert profiles == sorted(profiles, key=lambda p: p.key)

    def test_bad_arguments(self):
        with pytest.raises(InvalidInputError):
            enumerate_cyclotomic_profiles(-1)
        with pytest.raises(InvalidInputError):
            rt_scan(1, 5)
        with pytest.raises(InvalidInputError):
            rt_scan(2, -1)


class TestRtScan:
    """Certified ages reach 1 exactly when g + n >= 6."""

    @pytest.mark.parametrize(
        "g, n", [(g, n) for g in range(2, 6) for n in range(1, 7) if g + n >= 6]
    )
    def test_passes_once_g_plus_n_six(self, g, n):
        report = rt_scan(g, n)
        assert report.passed
        assert report.violations == []
        assert report.quasireflections == []
        assert report.witness is None

    @pytest.mark.parametrize("g, n", [(2, 3), (3, 2), (4, 1)])
    def test_order_six_witness_at_g_plus_n_five(self, g, n):
        report = rt_scan(g, n)
        assert not report.passed
        witness = report.witness
        assert witness.g_prime == 1
        assert witness.order == 6
        assert witness.certified_age == "5/6"
        assert witness.min_age == "4/3"
        assert witness.violation

    def test_witness_profile(self):
        witness = rt_scan(2, 3).witness
        assert witness.profile == "g'=1 g''=1 n=3 gamma'=Elliptic(1/6,5/6) u=Epsilon(+1)"
        assert witness.lambda_choice == [0]
        assert witness.z_sign == 1

    @pytest.mark.parametrize("n, expected", [(1, "5/2"), (2, "5"), (3, "15/2")])
    def test_minus_identity_minus_u_at_g_five(self, n, expected):
        entries = [
            e for e in rt_scan(5, n).entries
            if e.profile == f"g'=4 g''=1 n={n} gamma'=MinusIdentity u=Epsilon(-1)"
        ]
        assert len(entries) == 1
        assert not entries[0].quasireflection
        assert entries[0].min_age == expected

    def test_entries_cover_every_profile(self):
        report = rt_scan(2, 4)
        assert report.profiles_scanned == 14
        assert len(report.entries) == 14


class TestUNontrivialBound:
    """The toric factor alone."""

    def test_minus_identity_fails_at_one_one(self):
        report = u_nontrivial_bound_check(1, 1)
        assert report.entries == []
        assert report.minus_identity.age == "1/2"
        assert not report.minus_identity.passed
        assert report.exception
        assert not report.passed

    def test_minus_identity_at_one_two(self):
        report = u_nontrivial_bound_check(1, 2)
        assert report.minus_identity.age == "1"
        assert report.passed
        assert not report.exception

    def test_general_u_in_rank_two(self):
        report = u_nontrivial_bound_check(2, 1)
        assert len(report.entries) == 4
        assert report.passed
        ages = {tuple(e.profile): e.age for e in report.entries}
        assert ages[("0/1", "1/2")] == "1"
        assert ages[("1/3", "2/3")] == "2"

    def test_bad_arguments(self):
        with pytest.raises(InvalidInputError):
            u_nontrivial_bound_check(0, 1)


@pytest.mark.parametrize(
    "g, n, verdict",
    [(2, 1, "exception"), (2, 2, "exception"), (3, 1, "exception"), (2, 3, "canonical"), (4, 1, "canonical")],
)
def test_interior_singularity_table(g, n, verdict):
    assert interior_singularity_table(g, n).verdict == verdict


def test_interior_needs_g_two():
    with pytest.raises(InvalidInputError):
        interior_singularity_table(1, 1)
