import pytest

from traitpreuves import properties


@pytest.mark.parametrize("name", sorted(properties.SUITES))
def test_suites_pass_small(name):
    run = properties.run_suite(name, seed=1, count=20)
    assert run.passed, run.failures
    assert run.count == 20


def test_runs_are_reproducible():
    a = properties.run_suite("desargues", seed=5, count=100)
    b = properties.run_suite("desargues", seed=5, count=100)
    assert a.stats == b.stats and a.failures == b.failures


def test_summary_line():
    run = properties.run_suite("cross-ratio", seed=0, count=3)
    assert run.summary().startswith("PASS cross-ratio seed=0 count=3 failures=0")


def test_failures_are_recorded():
    def case(rng, stats):
        return rng.random() < 0.5

    run = properties._run("coin", 0, 50, case)
    assert not run.passed
    assert all(reason is None for _, reason in run.failures)
    assert 0 < len(run.failures) < 50
