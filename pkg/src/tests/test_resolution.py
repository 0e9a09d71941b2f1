"""Test Taylor complexes, minimalization, the interchange format and degree bounds."""

import pytest

import multireg
from multireg.configs import Caps, Config
from multireg.golden import product_of_projective_spaces, projective_space
from multireg.model.errors import InputError, SizeCapError
from multireg.model.vector import DegreeBox
from multireg.resolution import (
    SyzygyBox,
    check_degree_bounds,
    complex_from_dict,
    complex_to_dict,
    euler_hilbert,
    extract_type_J,
    hilbert_function,
    koszul_shifts,
    level_set_member,
    level_set_points,
    minimal_resolution,
    minimalize,
    taylor_complex,
    validate_complex,
)
from multireg.ring import classify_coarsening

TRIANGLE = [(1, 1, 0), (0, 1, 1), (1, 0, 1)]  # x0x1, x1x2, x0x2
P1XP1_IDEAL = [(1, 0, 1, 0), (1, 0, 0, 1)]  # x0y0, x0y1


@pytest.fixture(scope="module")
def p2():
    return projective_space(2)


@pytest.fixture(scope="module")
def p1xp1():
    return product_of_projective_spaces([1, 1])


class TestTaylor:
    def test_ranks(self, p2):
        complex_ = taylor_complex(p2, TRIANGLE)
        assert complex_.betti_numbers() == (1, 3, 3, 1)
        assert validate_complex(complex_) == [], "Taylor complex should be a valid complex"

    def test_not_minimal(self, p2):
        assert not taylor_complex(p2, TRIANGLE).is_minimal, "lcm(T) repeats, so units appear"

    def test_redundant_generators_dropped(self, p2):
        complex_ = taylor_complex(p2, TRIANGLE + [(1, 1, 1)])
        assert complex_.rank(1) == 3

    def test_generator_cap(self, p2):
        multireg.set_global_configs(Config(caps=Caps(taylor_generators=2)))
        with pytest.raises(SizeCapError):
            taylor_complex(p2, TRIANGLE)


class TestMinimalize:
    def test_triangle(self, p2):
        minimal = minimalize(taylor_complex(p2, TRIANGLE))
        assert minimal.is_minimal
        assert minimal.betti_numbers() == (1, 3, 2)
        assert extract_type_J(minimal).levels == (((0,),), ((2,),) * 3, ((3,),) * 2)
        assert validate_complex(minimal) == []

    def test_already_minimal(self, p1xp1):
        complex_ = minimal_resolution(p1xp1, P1XP1_IDEAL)
        assert extract_type_J(complex_).levels == (((0, 0),), ((1, 1), (1, 1)), ((1, 2),))

    def test_idempotent(self, p2):
        once = minimalize(taylor_complex(p2, TRIANGLE))
        assert extract_type_J(minimalize(once)) == extract_type_J(once)

    def test_generator_order(self, p2):
        forward = extract_type_J(minimal_resolution(p2, TRIANGLE))
        backward = extract_type_J(minimal_resolution(p2, list(reversed(TRIANGLE))))
        assert forward == backward, "shift multisets should not depend on generator order"

    def test_prime_field(self, p2):
        complex_ = minimal_resolution(p2, TRIANGLE, characteristic=2)
        assert complex_.characteristic == 2
        assert complex_.betti_numbers() == (1, 3, 2)
        assert validate_complex(complex_) == []


class TestInterchange:
    def test_dump_reloads(self, p2):
        complex_ = minimal_resolution(p2, TRIANGLE)
        reloaded = complex_from_dict(p2, complex_to_dict(complex_))
        assert reloaded.terms == complex_.terms
        assert reloaded.is_minimal

    def test_user_complex(self, p2):
        data = {
            "terms": [[[0]], [[1]]],
            "differentials": [
                [{"row": 0, "col": 0, "terms": [{"coefficient": 1, "exponents": [1, 0, 0]}]}]
            ],
        }
        complex_ = complex_from_dict(p2, data)
        assert complex_.betti_numbers() == (1, 1)

    def test_inhomogeneous_entry(self, p2):
        data = {
            "terms": [[[0]], [[1]]],
            "differentials": [
                [{"row": 0, "col": 0, "terms": [{"coefficient": 1, "exponents": [2, 0, 0]}]}]
            ],
        }
        with pytest.raises(InputError):
            complex_from_dict(p2, data)

    def test_nonzero_composition(self, p2):
        x0 = {"coefficient": "1", "exponents": [1, 0, 0]}
        data = {
            "terms": [[[0]], [[1]], [[2]]],
            "differentials": [
                [{"row": 0, "col": 0, "terms": [x0]}],
                [{"row": 0, "col": 0, "terms": [x0]}],
            ],
        }
        with pytest.raises(InputError) as excinfo:
            complex_from_dict(p2, data)
        assert "nonzero" in str(excinfo.value)

    def test_malformed(self, p2):
        with pytest.raises(InputError):
            complex_from_dict(p2, {"terms": [[[0]]], "extra": 1})

    def test_bad_coefficient(self, p2):
        data = {
            "terms": [[[0]], [[1]]],
            "differentials": [
                [{"row": 0, "col": 0, "terms": [{"coefficient": "x", "exponents": [1, 0, 0]}]}]
            ],
        }
        with pytest.raises(InputError):
            complex_from_dict(p2, data)


class TestDegreeBounds:
    """Shifts of S/(x0y0, x0y1) against the box from v = (1,0), (0,1), (1,1)."""

    @pytest.fixture
    def coarsenings(self, p1xp1):
        return [classify_coarsening(p1xp1, v) for v in ((1, 0), (0, 1), (1, 1))]

    def test_bounds_hold(self, p1xp1, coarsenings):
        J = extract_type_J(minimal_resolution(p1xp1, P1XP1_IDEAL))
        report = check_degree_bounds(J, coarsenings, [1, 1, 2])
        assert report.passed, f"unexpected violations {report.violations}"
        assert report.levels == 3

    def test_bounds_violated(self, p1xp1, coarsenings):
        J = extract_type_J(minimal_resolution(p1xp1, P1XP1_IDEAL))
        report = check_degree_bounds(J, coarsenings, [0, 0, 0])
        assert not report.passed
        assert not report.level_passed(1), "(1,1) at level 1 has total degree 2 > 1"
        assert all(v.value > v.limit for v in report.violations)

    def test_box_length_mismatch(self, coarsenings):
        with pytest.raises(InputError):
            SyzygyBox(tuple(coarsenings), (1, 1))

    def test_level_sets(self, p1xp1, coarsenings):
        box = SyzygyBox(tuple(coarsenings), (1, 1, 2))
        assert level_set_member(p1xp1, (1, 1), [(0, 0)], box, 1)
        assert not level_set_member(p1xp1, (3, 0), [(0, 0)], box, 1)
        assert not level_set_member(p1xp1, (-1, 0), [(0, 0)], box, 1), "outside 0 + Q"
        points = level_set_points(p1xp1, [(0, 0)], box, 0, DegreeBox.cube(2, -2, 3))
        assert points == ((0, 0), (0, 1), (1, 0), (1, 1))


class TestHilbert:
    def test_triangle(self, p2):
        assert [hilbert_function(p2, TRIANGLE, (d,)) for d in range(5)] == [1, 3, 3, 3, 3]

    def test_betti_numbers_match_hilbert_function(self, p1xp1):
        J = extract_type_J(minimal_resolution(p1xp1, P1XP1_IDEAL))
        for d in DegreeBox.cube(2, 0, 4).points():
            assert euler_hilbert(p1xp1, J, d) == hilbert_function(p1xp1, P1XP1_IDEAL, d), d

    def test_koszul(self, p2):
        J = koszul_shifts(p2)
        assert J.levels == (((0,),), ((1,),) * 3, ((2,),) * 3, ((3,),))
        assert all(euler_hilbert(p2, J, (d,)) == (1 if d == 0 else 0) for d in range(-2, 5))
