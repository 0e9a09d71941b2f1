"""Test the value types: vectors, windows, resolution types and verdicts."""

import pytest

from multireg.model.errors import InputError
from multireg.model.region import ResolutionTypeJ, parse_resolution_type
from multireg.model.status import EXACT, Verdict, merge_exactness, window_marker
from multireg.model.vector import DegreeBox, parse_vector, parse_vectors, parse_window


class TestParseVector:
    @pytest.mark.parametrize(
        "text, expected",
        [("(1,-2)", (1, -2)), ("1, -2", (1, -2)), ("-4", (-4,)), ("[0,3]", (0, 3))],
    )
    def test_valid(self, text, expected):
        assert parse_vector(text) == expected

    @pytest.mark.parametrize("text", ["", "()", "(1.5,2)", "(a,1)", "(1,,2)"])
    def test_invalid(self, text):
        with pytest.raises(InputError):
            parse_vector(text)

    def test_vector_lists(self):
        assert parse_vectors("(1,0) (0,1)") == [(1, 0), (0, 1)]
        assert parse_vectors("(1,0); [2,3]") == [(1, 0), (2, 3)]
        assert parse_vectors("3 -1") == [(3,), (-1,)]
        assert parse_vectors("") == []


class TestWindow:
    def test_uniform(self):
        box = parse_window("-1..1", 2)
        assert len(box) == 9
        assert (0, 1) in box and (2, 0) not in box

    def test_per_coordinate(self):
        box = parse_window("-1..0,2..3", 2)
        assert list(box.points()) == [(-1, 2), (-1, 3), (0, 2), (0, 3)]

    @pytest.mark.parametrize("text", ["1..", "0..1,0..1,0..1", "a..b"])
    def test_invalid(self, text):
        with pytest.raises(InputError):
            parse_window(text, 2)

    def test_empty_range(self):
        with pytest.raises(InputError):
            DegreeBox((2,), (1,))


class TestResolutionType:
    def test_prefixed_levels(self):
        J = parse_resolution_type("0:(0,0); 1:(1,1) (1,1); 2:(1,2)", 2)
        assert J.levels == (((0, 0),), ((1, 1), (1, 1)), ((1, 2),))
        assert J.length == 2
        assert not J.is_free
        assert list(J.shifts())[1] == (1, (1, 1))

    def test_unprefixed_and_braces(self):
        J = parse_resolution_type("{0}; {1 1}", 1)
        assert J.levels == (((0,),), ((1,), (1,)))

    def test_gaps_are_empty_levels(self):
        J = parse_resolution_type("0:(0); 2:(3)", 1)
        assert J.level(1) == ()
        assert J.level(2) == ((3,),)

    def test_duplicate_level(self):
        with pytest.raises(InputError):
            parse_resolution_type("0:(0); 0:(1)", 1)

    def test_wrong_rank(self):
        with pytest.raises(InputError):
            parse_resolution_type("0:(0,0,1)", 2)

    def test_empty_is_zero_module(self):
        assert parse_resolution_type("", 2).is_zero

    def test_mixed_ranks(self):
        with pytest.raises(InputError):
            ResolutionTypeJ.of([[(0,)], [(1, 1)]])

    def test_sublevelwise(self):
        small = ResolutionTypeJ.of([[(0,)], [(1,)]])
        big = ResolutionTypeJ.of([[(0,)], [(1,), (2,)]])
        assert small.is_sublevelwise(big)
        assert not big.is_sublevelwise(small)


def test_verdicts():
    assert Verdict.all_of([Verdict.YES, Verdict.UNKNOWN]) is Verdict.UNKNOWN
    assert Verdict.all_of([Verdict.UNKNOWN, Verdict.NO]) is Verdict.NO
    assert Verdict.all_of([]) is Verdict.YES
    assert Verdict.of(False) is Verdict.NO


def test_exactness_markers():
    assert merge_exactness(EXACT, EXACT) == EXACT
    assert merge_exactness(EXACT, window_marker(7), window_marker(3)) == "window:3"
