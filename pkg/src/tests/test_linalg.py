from fractions import Fraction

import pytest

from multireg.linalg import coefficient_field, composes_to_zero, rank


def test_rank_over_rationals():
    entries = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    assert rank(entries, (2, 2)) == 1
    assert rank({(0, 0): Fraction(1, 2), (1, 1): 3}, (2, 2)) == 2


def test_rank_depends_on_characteristic():
    entries = {(0, 0): 2, (1, 1): 1}
    assert rank(entries, (2, 2), 0) == 2
    assert rank(entries, (2, 2), 2) == 1, "2 vanishes in GF(2)"


def test_rank_of_empty_matrices():
    assert rank({}, (0, 3)) == 0
    assert rank({(0, 0): 0}, (2, 2)) == 0


def test_coefficient_field():
    assert coefficient_field(0).is_QQ
    assert coefficient_field(5).characteristic() == 5


def test_composes_to_zero():
    second = {(0, 0): 1, (0, 1): -1}
    first = {(0, 0): 1, (1, 0): 1}
    assert composes_to_zero(second, (1, 2), first, (2, 1))
    assert not composes_to_zero(second, (1, 2), {(0, 0): 1}, (2, 1))
    assert composes_to_zero({}, (0, 2), first, (2, 1)), "a map into the zero module"


def test_composes_to_zero_shape_mismatch():
    with pytest.raises(ValueError):
        composes_to_zero({}, (1, 3), {}, (2, 1))
