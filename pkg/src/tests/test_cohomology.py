"""Test local cohomology of free modules, regularity membership and the oracles."""

import math

import pytest

from multireg.cohomology import (
    MonomialModule,
    PatternComplex,
    cech_oracle_piece,
    coh_free_piece,
    h0_torsion_piece,
    mv_vanishing,
    pattern_cohomology,
    reg_level_membership,
    reg_membership,
    regS_membership,
    regS_region,
    support_semigroups,
    top_index,
)
from multireg.family import family_from_ring
from multireg.golden import (
    hirzebruch_surface,
    product_of_projective_spaces,
    projective_space,
    weighted_projective_space,
)
from multireg.model.errors import InputError
from multireg.model.region import ResolutionTypeJ, parse_resolution_type
from multireg.model.status import EXACT, Verdict
from multireg.model.vector import DegreeBox


@pytest.fixture(scope="module")
def p2():
    return projective_space(2)


@pytest.fixture(scope="module")
def p1xp1():
    return product_of_projective_spaces([1, 1])


class TestFreeModulePieces:
    """dim H^i_B(S(-e))_d by counting lattice points of the support pieces."""

    @pytest.mark.parametrize("d, expected", [(-4, 3), (-3, 1), (-2, 0), (0, 0), (-5, 6)])
    def test_top_cohomology_of_p2(self, p2, d, expected):
        assert coh_free_piece(p2, [(0,)], 3, (d,)) == expected, f"H^3 at {d}"

    def test_lower_cohomology_of_p2_vanishes(self, p2):
        for i in (0, 1, 2):
            assert all(coh_free_piece(p2, [(0,)], i, (d,)) == 0 for d in range(-6, 6))

    def test_shift(self, p2):
        assert coh_free_piece(p2, [(1,)], 3, (-3,)) == 3, "S(-1) moves H^3 up by one"

    def test_sum_of_shifts(self, p2):
        assert coh_free_piece(p2, [(0,), (0,)], 3, (-4,)) == 6

    @pytest.mark.parametrize(
        "i, d, expected",
        [(2, (-2, 0), 1), (2, (-3, 1), 4), (2, (0, -2), 1), (3, (-2, -2), 1), (2, (-1, 3), 0)],
    )
    def test_p1xp1(self, p1xp1, i, d, expected):
        assert coh_free_piece(p1xp1, [(0, 0)], i, d) == expected

    def test_top_index(self, p1xp1, p2):
        assert top_index(p2) == 3
        assert top_index(p1xp1) == 4, "four generators in the irrelevant ideal"

    def test_weighted_top_piece(self):
        ring = weighted_projective_space((1, 1, 2))
        assert coh_free_piece(ring, [(0,)], 3, (-4,)) == 1
        assert coh_free_piece(ring, [(0,)], 3, (-3,)) == 0

    def test_infinite_piece(self, p1xp1):
        """With B = (x0) the piece x0^-k x1^(k-1) is nonzero for every k."""
        assert coh_free_piece(p1xp1, [(0, 0)], 1, (-1, 0), ideal=[(1, 0, 0, 0)]) == math.inf
        assert coh_free_piece(p1xp1, [(0, 0)], 1, (0, 0), ideal=[(1, 0, 0, 0)]) == math.inf
        assert coh_free_piece(p1xp1, [(0, 0)], 1, (0, -1), ideal=[(1, 0, 0, 0)]) == 0


class TestPatterns:
    def test_full_pattern_of_p2(self, p2):
        assert pattern_cohomology(p2, {0, 1, 2}) == (0, 0, 0, 1)

    def test_empty_pattern(self, p2):
        """Every Cech term covers the empty pattern: a full simplex, hence acyclic."""
        assert pattern_cohomology(p2, set()) == (0, 0, 0, 0)

    def test_unknown_variable(self, p2):
        with pytest.raises(InputError):
            pattern_cohomology(p2, {7})

    @pytest.mark.parametrize("sigma", [(), (0,), (0, 1), (0, 2), (1, 3), (0, 1, 2, 3)])
    def test_pattern_complex_invariants(self, sigma):
        ring = hirzebruch_surface(2)
        complex_ = PatternComplex.build(sigma, ring.irrelevant)
        h = complex_.cohomology()
        assert complex_.squares_to_zero(), "Cech differential should square to zero"
        assert complex_.euler_characteristic() == sum((-1) ** i * x for i, x in enumerate(h))

    def test_support_of_p1xp1(self, p1xp1):
        support = support_semigroups(p1xp1, 2)
        offsets = sorted(piece.offset for piece in support.pieces)
        assert offsets == [(-2, 0), (0, -2)]


class TestRegularity:
    def test_regs_of_p2(self, p2):
        region = regS_region(p2, DegreeBox((-5,), (5,)))
        assert region.generators == ((0,),)
        assert region.exactness == EXACT

    def test_regs_of_hirzebruch(self):
        region = regS_region(hirzebruch_surface(2), DegreeBox.cube(2, -6, 6))
        assert region.generators == ((0, 1), (1, 0))
        assert region.exactness == EXACT

    def test_regs_window_missing_a_generator(self):
        region = regS_region(hirzebruch_surface(2), DegreeBox((-1, -1), (0, 6)))
        assert region.generators == ((0, 1),)
        assert region.exactness != EXACT, "(1, 0) lies right of the window and is regular"

    def test_regs_window_just_above_generator(self, p2):
        region = regS_region(p2, DegreeBox((0,), (3,)))
        assert region.exactness == EXACT, "everything below 0 is in the support of H^3"

    def test_regs_window_too_small(self, p2):
        region = regS_region(p2, DegreeBox((1,), (3,)))
        assert region.generators == ((1,),)
        assert region.exactness != EXACT, "0 is regular and lies below the window"

    def test_regs_window_rank(self, p2):
        with pytest.raises(InputError):
            regS_region(p2, DegreeBox.cube(2, 0, 1))

    def test_point_membership(self, p1xp1):
        assert regS_membership(p1xp1, (0, 0)) is Verdict.YES
        assert regS_membership(p1xp1, (2, 1)) is Verdict.YES
        assert regS_membership(p1xp1, (-1, 0)) is Verdict.NO

    def test_module_membership(self, p1xp1):
        J = parse_resolution_type("0:(0,0); 1:(1,1) (1,1); 2:(1,2)", 2)
        assert reg_membership(p1xp1, J, (1, 1)) is Verdict.YES
        assert reg_level_membership(p1xp1, J, (1, 1), 0) is Verdict.YES

    def test_zero_module_is_regular(self, p2):
        assert reg_membership(p2, ResolutionTypeJ.of([]), (-10,)) is Verdict.YES


class TestOracle:
    """The truncated Cech computation agrees with the lattice count."""

    @pytest.mark.parametrize("d", [-4, -3, -2, 0, 2])
    def test_p1(self, d):
        ring = projective_space(1)
        oracle = cech_oracle_piece(ring, MonomialModule.free([(0,)]), 2, (d,))
        assert oracle.status == "exact"
        assert oracle.dimension == coh_free_piece(ring, [(0,)], 2, (d,))

    def test_p1xp1(self, p1xp1):
        oracle = cech_oracle_piece(p1xp1, MonomialModule.free([(0, 0)]), 2, (-3, 1))
        assert oracle.dimension == 4


class TestTorsion:
    """H^0_B of S/I for monomial I on the projective line."""

    @pytest.fixture
    def module(self):
        return MonomialModule.quotient([(2, 0), (1, 1)], rank=1)

    def test_exact_mode(self, module):
        ring = projective_space(1)
        piece = h0_torsion_piece(ring, module, (1,), exact=True)
        assert piece.dimension == 1, "x0 is the only torsion element of degree 1"
        assert piece.stop_reason == "exact"
        assert not piece.heuristic

    def test_stabilization_mode(self, module):
        ring = projective_space(1)
        piece = h0_torsion_piece(ring, module, (1,))
        assert piece.dimension == 1
        assert piece.heuristic, "stabilization is not a proof"

    def test_no_torsion_above(self, module):
        ring = projective_space(1)
        assert h0_torsion_piece(ring, module, (2,), exact=True).dimension == 0

    def test_free_module(self):
        ring = projective_space(1)
        piece = h0_torsion_piece(ring, MonomialModule.free([(0,)]), (3,))
        assert (piece.dimension, piece.stop_reason) == (0, "torsion-free")


def test_mayer_vietoris_is_sound(p1xp1):
    family = family_from_ring(p1xp1)
    ideals = [family.ideal((i,)) for i in range(family.t)]
    for d in DegreeBox.cube(2, -3, 3).points():
        for i in range(5):
            if mv_vanishing(p1xp1, ideals, i, d):
                assert coh_free_piece(p1xp1, [(0, 0)], i, d) == 0, f"H^{i} at {d}"
