#!/usr/bin/env python3
# tests/test_verification.py

import pytest

from constants import PROFILE_QUICK
from errors import UsageError
from services.verification import run_verification


@pytest.mark.parametrize("suite", ["kinematics", "angular", "spectral", "bogolubov"])
def test_fast_suites_pass_quick_profile(suite, config):
    report = run_verification(suite, PROFILE_QUICK, config)
    failures = [(c.name, c.detail) for c in report.failures]
    assert report.passed, failures
    assert report.checks
    assert {c.suite for c in report.checks} == {suite}


@pytest.mark.slow
def test_scalar_suite_reports_worked_value(config):
    report = run_verification("scalar", PROFILE_QUICK, config)
    names = {c.name: c for c in report.checks}
    assert names["worked_value"].passed
    assert names["wightman_identity"].passed
    assert names["inertial_limit"].passed


def test_unknown_suite_or_profile():
    with pytest.raises(UsageError):
        run_verification("everything")
    with pytest.raises(UsageError):
        run_verification("spectral", "lenient")


def test_report_serializes(config):
    payload = run_verification("bogolubov", PROFILE_QUICK, config).to_dict()
    assert payload["suite"] == "bogolubov"
    assert payload["n_checks"] == len(payload["checks"])
    assert payload["n_failures"] == 0


@pytest.mark.slow
def test_full_default_run(config):
    report = run_verification(config=config)
    assert report.passed, [(c.suite, c.name, c.detail) for c in report.failures]
