from unittest.mock import patch

import pytest

from multireg.cohomology import MonomialModule, cech_oracle_piece, coh_free_piece
from multireg.golden import hirzebruch_surface
from multireg.main import main
from multireg.selftest import (
    SUITES,
    SuiteResult,
    _conclusive_oracle,
    run_selftest,
    syzygy_box_suite,
)


def test_suite_result_counts_checks():
    result = SuiteResult("demo")
    result.check(True, "never shown")
    result.check(False, "broken invariant")
    assert result.checks == 2
    assert not result.passed
    assert result.to_dict()["failures"] == ["broken invariant"]
    assert set(result.to_dict()) == {"name", "passed", "checks", "failures", "seconds"}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    (result,) = run_selftest([name])
    assert result.passed, f"{name} failures: {result.failures}"
    assert result.checks > 0


def test_oracle_suite_widens_the_box():
    """H^3 of S(-(2,2)) at (-3,-3) has fine degrees with |a_k| = 12."""
    ring = hirzebruch_surface(2)
    module = MonomialModule.free([(2, 2)])
    assert cech_oracle_piece(ring, module, 3, (-3, -3)).dimension is None
    oracle = _conclusive_oracle(ring, module, 3, (-3, -3))
    assert oracle.dimension == coh_free_piece(ring, [(2, 2)], 3, (-3, -3)) == 36


def test_syzygy_box_suite_certifies_degrees():
    result = SuiteResult("syzygy-boxes")
    syzygy_box_suite(result, samples=3)
    assert result.passed, f"failures: {result.failures}"
    assert result.checks > 0, "some window degree should lie in reg_{B*,v*}"


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_selftest(["no-such-suite"])


def test_failing_suite_sets_exit_code(tmp_path, capsys):
    with patch.dict(SUITES, {"broken": lambda result: result.check(False, "boom")}):
        results = run_selftest(["broken"])
        assert [r.failures for r in results] == [["boom"]]
        status = main(["selftest", "--suite", "broken", "-c", str(tmp_path / "none.toml")])
    assert status == 1, "a failed check exits with 1"
    assert "some checks failed" in capsys.readouterr().out
