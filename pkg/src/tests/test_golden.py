"""Test the reference rings and the committed golden scenarios."""

import pytest

from multireg.cohomology import coh_free_piece
from multireg.golden import (
    EXPECTED,
    SCENARIOS,
    ScenarioResult,
    hirzebruch_surface,
    product_of_projective_spaces,
    projective_space,
    run_scenario,
    weighted_projective_space,
)


def test_reference_rings():
    assert projective_space(3).n == 4
    assert product_of_projective_spaces([1, 2]).names == ("x0", "x1", "y0", "y1", "y2")
    assert hirzebruch_surface(3).degrees == ((1, 0), (-3, 1), (1, 0), (0, 1))
    ring = weighted_projective_space((2, 3, 5))
    assert ring.name == "weighted(2,3,5)"
    assert ring.config_c == ((30,),), "C is the lcm of the weights"


def test_every_scenario_has_expectations():
    assert set(SCENARIOS) == set(EXPECTED)


@pytest.mark.parametrize("name", ["classical", "weighted", "multiprojective", "hirzebruch"])
def test_scenario_matches(name):
    result = run_scenario(name)
    assert result.passed, f"{name} differs: {result.differences}"


def test_weighted_top_cohomology():
    """H^n of a weighted projective space lives at or below -sum(a_i), with h = 1 at the bound."""
    for weights in ((1, 2), (1, 1, 2), (2, 3, 5)):
        ring = weighted_projective_space(weights)
        total = sum(weights)
        assert coh_free_piece(ring, [(0,)], len(weights), (-total,)) == 1
        assert all(
            coh_free_piece(ring, [(0,)], len(weights), (d,)) == 0
            for d in range(-total + 1, -total + 20)
        )


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_scenario("nope")


def test_differences_are_reported():
    result = ScenarioResult("demo", {"a": 1, "b": 2}, {"a": 1, "b": 3, "c": 0})
    assert not result.passed
    assert len(result.differences) == 2, "b differs and c is missing"
    assert result.to_dict()["passed"] is False
