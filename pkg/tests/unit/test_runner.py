import pytest
from utils import QUICK_LIMITS

from freeness_bounds.errors import (
    ChecksFailed,
    InvalidCheckError,
    NoChecksRun,
    SuiteRunnerValidationError,
)
from freeness_bounds.runner import SuiteRunner
from freeness_bounds.suites import SUITES, CheckContext, SuiteLimits, check, collect_checks


@pytest.fixture
def suite_runner():
    runner = SuiteRunner()
    runner.configure(limits=QUICK_LIMITS)
    yield runner


def failing_check(ctx: CheckContext) -> str:
    raise AssertionError("boom")


def passing_check(ctx: CheckContext) -> str:
    return "fine"


def test_every_suite_has_checks():
    for suite in SUITES:
        assert collect_checks(suite)
    assert collect_checks("nope") == []


@pytest.mark.parametrize("suite", SUITES)
def test_quick_suites_pass(suite_runner, suite):
    outcomes = suite_runner.run(suite)
    assert outcomes == suite_runner.outcomes
    assert [o.check for o in outcomes] == [fn.__name__ for fn in collect_checks(suite)]
    assert all(o.passed for o in outcomes)


def test_unknown_suite(suite_runner):
    with pytest.raises(NoChecksRun):
        suite_runner.run("nope")


def test_failures_are_collected(suite_runner, monkeypatch):
    monkeypatch.setattr(
        "freeness_bounds.runner.collect_checks", lambda suite: [failing_check, passing_check]
    )
    with pytest.raises(ChecksFailed) as e:
        suite_runner.run("oracle")
    assert "oracle:failing_check raised AssertionError('boom')" in str(e.value)
    assert [o.passed for o in suite_runner.outcomes] == [False, True]
    assert suite_runner.outcomes[0].detail == "boom"


def test_raise_immediately(suite_runner, monkeypatch):
    monkeypatch.setattr("freeness_bounds.runner.collect_checks", lambda suite: [failing_check])
    suite_runner.configure(raise_immediately=True)
    with pytest.raises(AssertionError):
        suite_runner.run("oracle")


@pytest.mark.parametrize(
    "config",
    (
        {"precision": 8},
        {"limits": SuiteLimits(table_n_max=1)},
        {"limits": SuiteLimits(bound_r_values=())},
        {"limits": SuiteLimits(oracle_n_max=0)},
        {"limits": "quick"},
    ),
)
def test_invalid_configuration(config):
    runner = SuiteRunner()
    runner.configure(**config)
    with pytest.raises(SuiteRunnerValidationError):
        runner.run("oracle")


def test_invalid_configuration_lists_every_problem():
    runner = SuiteRunner(precision=8)
    runner.configure(limits=SuiteLimits(oracle_n_max=0, random_chains=0))
    with pytest.raises(SuiteRunnerValidationError) as e:
        runner.run("oracle")
    message = str(e.value)
    assert "precision" in message
    assert "oracle_n_max" in message and "random_chains" in message


def test_check_signature():
    with pytest.raises(InvalidCheckError):
        check("oracle")(lambda ctx, extra: "")
    with pytest.raises(InvalidCheckError):
        check("oracle")(lambda *, ctx: "")
    with pytest.raises(InvalidCheckError):
        check("nope")


def test_context_memoises_solves():
    ctx = CheckContext(suite="oracle")
    assert ctx.solve(4, 1) is ctx.solve(4, 1)
