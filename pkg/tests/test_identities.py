import pytest

from so3wrt.cyclo import LevelError, RootChoice
from so3wrt.identities import SUITES, kirby_pairs, run_suite


def failures(checks):
    return [c.name for c in checks if not c.passed]


@pytest.mark.parametrize("suite", ["mu-identity", "alpha-root", "conjugation", "kirby"])
def test_suites_pass_at_r5(suite):
    assert failures(run_suite(suite, 5)) == []


def test_kirby_pairs_r7():
    pairs = kirby_pairs(7)
    assert len(pairs) >= 5
    assert failures(run_suite("kirby", 7)) == []


def test_kirby_pairs_are_nontrivial():
    for name, x, y in kirby_pairs(5):
        assert x != y, name


def test_gauss_remark_reports_each_relation():
    checks = {c.name: c.passed for c in run_suite("gauss-remark", 11)}
    assert checks["double sum == -A^2 * closed form (r=11)"]
    assert checks["|double sum| == sqrt(r+1)/2 (r=11)"]
    assert "double sum == closed form (r=11)" in checks


def test_suite_errors():
    with pytest.raises(KeyError):
        run_suite("nope", 5)
    with pytest.raises(LevelError):
        run_suite("gauss-remark", 7, RootChoice.E_INV)
    assert set(SUITES) == {"gauss-remark", "mu-identity", "alpha-root", "conjugation", "kirby"}
