import pytest

from cubechow.report import VerificationReport
from cubechow.suites import SUITES, Options, run_suite, suite


def test_every_suite_has_an_anchor():
    assert len(SUITES) == 12
    assert all(s.anchor for s in SUITES.values())


def test_registration_without_anchor_refused():
    with pytest.raises(ValueError):
        suite("no-anchor", "")(lambda corpus, opts: VerificationReport("x", ""))
    assert "no-anchor" not in SUITES


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("missing")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name, corpus):
    report = run_suite(name, corpus, Options(seed=3, random=10, max_n=3, samples=2))
    assert report.entries
    assert report.passed, report.render()
    assert report.anchor == SUITES[name].anchor


def test_reports_are_deterministic(corpus):
    opts = Options(seed=5, random=5, samples=1)
    assert run_suite("sd-chain", corpus, opts).to_json() == \
        run_suite("sd-chain", corpus, opts).to_json()
