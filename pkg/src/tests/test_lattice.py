"""Test semigroup membership, shifted regions and integer feasibility."""

import math

import pytest

from multireg.lattice import (
    check_pointed,
    compositions,
    count_representations,
    find_functional,
    in_semigroup,
    integer_feasible,
    iter_representations,
    minimal_generators,
    pointed_functional,
    semigroup_region,
    shifted_region,
)
from multireg.model.errors import InputError, NotPointedError
from multireg.model.status import Feasibility
from multireg.model.vector import dot

STANDARD_2 = ((1, 0), (0, 1))


class TestShiftedRegion:
    """N C[j] for positive, zero and negative j."""

    def test_positive_shift_over_z(self):
        region = shifted_region(((1,),), 2)
        assert region.generators == ((2,),), "N{1}[2] should start at 2"

    def test_negative_shift_over_z(self):
        region = shifted_region(((1,),), -1)
        assert region.generators == ((-1,),), "N{1}[-1] should start at -1"

    def test_zero_shift_is_semigroup(self):
        region = shifted_region(STANDARD_2, 0)
        assert region.generators == ((0, 0),), "N C[0] should be N C itself"

    def test_positive_shift_over_orthant(self):
        region = shifted_region(STANDARD_2, 1)
        assert region.generators == ((0, 1), (1, 0)), "N C[1] should have both unit vectors"

    def test_negative_shift_over_orthant(self):
        region = shifted_region(STANDARD_2, -1)
        assert region.generators == ((-1, 0), (0, -1))


def test_in_semigroup_numerical():
    """The numerical semigroup generated by 2 and 3 misses only 1."""
    base = ((2,), (3,))
    assert not in_semigroup(base, (1,)), "1 is a gap of N{2,3}"
    assert all(in_semigroup(base, (k,)) for k in (0, 2, 3, 4, 5, 7, 11))
    assert not in_semigroup(base, (-2,)), "negative degrees are never in N C"


def test_minimal_generators_drop_redundant():
    assert minimal_generators(((1,),), [(3,), (1,), (5,)]) == ((1,),)
    assert minimal_generators(STANDARD_2, [(1, 0), (0, 1), (1, 1)]) == ((0, 1), (1, 0))


def test_semigroup_region_rejects_empty_base():
    with pytest.raises(InputError):
        semigroup_region([], [(0,)])


def test_compositions():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert list(compositions(1, 0)) == [], "no way to split 1 into zero parts"


class TestPointedness:
    def test_pointed_certificate_has_functional(self):
        certificate = check_pointed(((1, 0), (1, 1), (-1, 2)))
        assert certificate.pointed, "the cone should be pointed"
        assert all(dot(certificate.functional, g) >= 1 for g in certificate.generators)

    def test_line_is_not_pointed(self):
        certificate = check_pointed(((1, 0), (-1, 0), (0, 1)))
        assert not certificate.pointed
        u, minus_u = certificate.witness_pair()
        assert tuple(-x for x in u) == minus_u

    def test_zero_generator_is_not_pointed(self):
        assert not check_pointed(((0, 0), (1, 0))).pointed

    def test_pointed_functional_raises(self):
        with pytest.raises(NotPointedError) as excinfo:
            pointed_functional(((1,), (-1,)))
        assert excinfo.value.certificate.relation is not None


def test_find_functional_with_zero_constraints():
    phi = find_functional([(1, 0)], [(0, 1)])
    assert phi is not None, "a functional should exist"
    assert dot(phi, (1, 0)) >= 1
    assert dot(phi, (0, 1)) == 0


def test_find_functional_infeasible():
    assert find_functional([(1, 0), (-1, 0)]) is None


class TestIntegerFeasibility:
    """Tri-state feasibility, also for non-pointed column sets."""

    def test_pointed_feasible_with_witness(self):
        result = integer_feasible(((2,), (3,)), (7,))
        assert result.status is Feasibility.FEASIBLE
        assert 2 * result.witness[0] + 3 * result.witness[1] == 7

    def test_pointed_infeasible(self):
        assert integer_feasible(((2,), (3,)), (1,)).status is Feasibility.INFEASIBLE

    def test_line_reaches_everything(self):
        assert integer_feasible(((1,), (-1,)), (5,)).feasible
        assert integer_feasible(((1,), (-1,)), (-5,)).feasible

    def test_lattice_obstruction(self):
        assert integer_feasible(((2,), (-2,)), (3,)).status is Feasibility.INFEASIBLE

    def test_mixed_lineality_and_ray(self):
        columns = ((1, 0), (-1, 0), (0, 1))
        assert integer_feasible(columns, (-4, 2)).feasible
        assert not integer_feasible(columns, (3, -1)).feasible


class TestCountRepresentations:
    def test_exact_count(self):
        assert count_representations(((1,), (1,)), (3,)) == 4

    def test_no_representation(self):
        assert count_representations(((2,),), (3,)) == 0

    def test_unbounded_solution_set(self):
        assert count_representations(((1,), (-1,)), (0,)) == math.inf

    def test_graded_piece_of_p2(self):
        assert count_representations(((1,), (1,), (1,)), (2,)) == 6


def test_iter_representations_lists_every_solution():
    solutions = list(iter_representations(((1,), (2,)), (4,)))
    assert sorted(solutions) == [(0, 2), (2, 1), (4, 0)]
