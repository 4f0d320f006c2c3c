import pytest

from paramkit.corpus import (
    list_scenarios,
    load_scenario,
    run_checks,
    run_scenario,
    scenario_text,
)
from paramkit.errors import UnknownScenario
from paramkit.session import parse_session


def test_bundle_is_nonempty():
    names = list_scenarios()
    assert len(names) >= 6
    assert names == sorted(names)


@pytest.mark.parametrize("name", list_scenarios())
def test_scenario_passes(name):
    rep = run_scenario(name)
    assert rep.results, f"{name} declares no checks"
    failures = [r.describe() for r in rep.results if not r.passed]
    assert rep.passed, f"{name}:\n" + "\n".join(failures)


@pytest.mark.parametrize("name", list_scenarios())
def test_every_expectation_is_tagged(name):
    sess = load_scenario(name)
    assert sess.expectations
    for exp in sess.expectations:
        assert exp.tag in {"PAPER", "TRIVIAL", "DERIVED"}


def test_unknown_scenario_lists_available():
    with pytest.raises(UnknownScenario) as exc:
        scenario_text("no-such-ring")
    msg = str(exc.value)
    for name in list_scenarios():
        assert name in msg


def test_inline_text_checks(plane):
    text = """ring P
char 0
vars x z
seq m = x, z
expect sop m = true  # [TRIVIAL]
expect dim zero = 2  # [TRIVIAL]
"""
    rep = run_checks(parse_session(text))
    assert rep.passed
    assert [r.op for r in rep.results] == ["sop", "dim"]


def test_failing_check_is_reported_not_raised():
    text = """ring P
char 0
vars x z
seq m = x, z
expect dim zero = 7  # [TRIVIAL]
"""
    rep = run_checks(parse_session(text))
    assert not rep.passed
    r = rep.results[0]
    assert r.expected == "7" and r.actual == "2"
    assert "dim" in r.describe()


def test_erroring_check_is_captured():
    text = """ring P
char 0
vars x z
seq bad = x
expect length bad = 1  # [TRIVIAL]
"""
    rep = run_checks(parse_session(text))
    assert not rep.passed
    assert rep.results[0].actual.startswith("error ")


def test_report_counts(plane):
    rep = run_scenario("plane")
    total, passed = rep.counts
    assert total == passed == len(rep.results)
    assert rep.name == "plane"
    assert "plane" in rep.describe()
