"""Test half-planes, v-regularity and the regularity number."""

import math
from fractions import Fraction

import pytest

from multireg.coarsen import (
    HalfPlaneData,
    MinMaxDot,
    bstar_regular,
    check_nonnegative_on_c,
    coarsened_type,
    halfplane_implies_reg,
    halfplane_vanishes,
    min_max_dot,
    nc_halfplane_bound,
    vreg_membership,
    vregnum,
)
from multireg.golden import (
    hirzebruch_surface,
    product_of_projective_spaces,
    projective_space,
)
from multireg.model.errors import InputError, PreconditionError
from multireg.model.region import ResolutionTypeJ, parse_resolution_type
from multireg.model.status import Verdict
from multireg.ring import classify_coarsening

ORTHANT = ((1, 0), (0, 1))


@pytest.fixture(scope="module")
def p1xp1():
    return product_of_projective_spaces([1, 1])


@pytest.fixture
def free_p1xp1():
    return ResolutionTypeJ.free([(0, 0)])


class TestHalfPlanes:
    def test_sides(self):
        plane = HalfPlaneData((1, 1), Fraction(2))
        assert plane.in_plus((2, 0)) and plane.in_minus((2, 0)) and plane.on_line((2, 0))
        assert plane.in_plus((3, 0)) and not plane.in_minus((3, 0))
        assert plane.in_minus((0, 1)) and not plane.in_plus((0, 1))

    def test_min_max(self):
        assert min_max_dot((1, 1), ORTHANT) == MinMaxDot(1, 1)
        assert min_max_dot((2, 0), ORTHANT) == MinMaxDot(0, 2)

    def test_select(self):
        mm = MinMaxDot(0, 3)
        assert mm.select(1, 2) == 3, "k - i < 0 picks the maximum"
        assert mm.select(1, 1) == 0
        assert mm.select(1, 0) == 0

    @pytest.mark.parametrize("k, expected", [(2, 0), (0, 0), (-1, -1), (-2, -2)])
    def test_nc_bound(self, k, expected):
        assert nc_halfplane_bound((1, 0), ORTHANT, k) == expected

    def test_negative_on_c(self):
        with pytest.raises(PreconditionError) as excinfo:
            check_nonnegative_on_c((1, -1), ORTHANT)
        assert "c_1" in str(excinfo.value)


class TestHalfPlaneCriterion:
    def test_p2_regular_at_zero(self):
        ring = projective_space(2)
        conclusion = halfplane_implies_reg(ring, ResolutionTypeJ.free([(0,)]), (0,), (1,))
        assert conclusion.in_reg is Verdict.YES
        assert conclusion.exact
        assert [s.threshold for s in conclusion.steps] == [1, 0, -1, -2]

    def test_p2_below_zero(self):
        ring = projective_space(2)
        conclusion = halfplane_implies_reg(ring, ResolutionTypeJ.free([(0,)]), (-1,), (1,))
        assert conclusion.in_reg is Verdict.NO
        assert conclusion.steps[3].verdict is Verdict.NO, "H^3 reaches -3"

    def test_other_k_has_no_conclusion(self, p1xp1, free_p1xp1):
        conclusion = halfplane_implies_reg(p1xp1, free_p1xp1, (0, 0), (1, 1), k=2)
        assert conclusion.in_reg is None
        assert conclusion.to_dict()["in_reg"] is None

    def test_direction_leaving_plane(self, p1xp1, free_p1xp1):
        """H^2 of P^1 x P^1 grows along +y on its x-negative piece."""
        plane = HalfPlaneData((0, 1), Fraction(5))
        assert halfplane_vanishes(p1xp1, free_p1xp1, plane, 2) is Verdict.NO
        plane = HalfPlaneData((1, 1), Fraction(-3))
        assert halfplane_vanishes(p1xp1, free_p1xp1, plane, 3) is Verdict.YES


class TestVRegularity:
    def test_coarsened_type(self, p1xp1):
        J = parse_resolution_type("0:(0,0); 1:(1,1) (1,1); 2:(1,2)", 2)
        cv = classify_coarsening(p1xp1, (1, 1))
        assert coarsened_type(J, cv).levels == (((0,),), ((2,), (2,)), ((3,),))

    def test_membership(self, p1xp1, free_p1xp1):
        assert vreg_membership(p1xp1, free_p1xp1, (1, 0), 0) is Verdict.YES
        assert vreg_membership(p1xp1, free_p1xp1, (1, 0), -1) is Verdict.NO

    @pytest.mark.parametrize("v", [(1, 0), (0, 1), (1, 1)])
    def test_regularity_number_of_s(self, p1xp1, free_p1xp1, v):
        number = vregnum(p1xp1, free_p1xp1, v)
        assert number.value == 0
        assert not number.upper_bound

    def test_regularity_number_of_shift(self, p1xp1):
        number = vregnum(p1xp1, ResolutionTypeJ.free([(2, 3)]), (1, 1))
        assert number.value == 5

    def test_zero_module(self, p1xp1):
        number = vregnum(p1xp1, ResolutionTypeJ.of([]), (1, 0))
        assert number.value == -math.inf
        assert number.to_dict()["value"] == "-inf"

    def test_quotient_is_upper_bound(self, p1xp1):
        J = parse_resolution_type("0:(0,0); 1:(1,1) (1,1); 2:(1,2)", 2)
        number = vregnum(p1xp1, J, (1, 1))
        assert number.upper_bound
        assert number.value <= 2

    def test_hirzebruch_fiber_direction(self):
        ring = hirzebruch_surface(2)
        number = vregnum(ring, ResolutionTypeJ.free([(0, 0)]), (0, 1))
        assert number.value == 0


class TestBStar:
    def test_all_bounds(self, p1xp1, free_p1xp1):
        vectors = [(1, 0), (0, 1)]
        assert bstar_regular(p1xp1, free_p1xp1, vectors, [0, 0]) is Verdict.YES
        assert bstar_regular(p1xp1, free_p1xp1, vectors, [0, -1]) is Verdict.NO

    def test_empty(self, p1xp1, free_p1xp1):
        assert bstar_regular(p1xp1, free_p1xp1, [], []) is Verdict.YES

    def test_length_mismatch(self, p1xp1, free_p1xp1):
        with pytest.raises(InputError):
            bstar_regular(p1xp1, free_p1xp1, [(1, 0)], [0, 1])
