"""Shared fixtures and the acceptance-criteria summary hook.

Tests marked ``@pytest.mark.criterion("...")`` feed a one-line-per-
criterion PASS/FAIL block printed after the normal pytest summary.
"""
from __future__ import annotations

import json
from pathlib import Path

import pytest

import staffrank as sr

REPO = Path(__file__).resolve().parent.parent

_CRITERIA: dict[str, tuple[str, str]] = {}
_INFO_LINES: list[str] = []


def record_info(line: str) -> None:
    """Add an informational (non-gating) line to the acceptance block."""
    _INFO_LINES.append(line)


@pytest.fixture(scope="session")
def golden() -> dict:
    return json.loads((REPO / "tests" / "data" / "campus30_golden.json").read_text())


@pytest.fixture(scope="session")
def campus30() -> sr.Scenario:
    return sr.load_scenario(REPO / "fixtures" / "campus30")


@pytest.fixture(scope="session")
def desk4() -> sr.Scenario:
    return sr.load_scenario(REPO / "fixtures" / "desk4")


@pytest.fixture(scope="session")
def campus30_without_rewards(campus30) -> sr.Scenario:
    return sr.Scenario(
        roster=campus30.roster,
        achievements=campus30.achievements,
        admin_achievement_weights=campus30.admin_achievement_weights,
        personnel_achievement_weights=campus30.personnel_achievement_weights,
        config=campus30.config,
        name="campus30-achievements-only",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name, note=...): acceptance criterion asserted by this test"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        name = marker.args[0]
        note = marker.kwargs.get("note", "")
        status = "PASS" if report.passed else "FAIL"
        if report.skipped:
            status = "SKIP"
        _CRITERIA[name] = (status, note)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA and not _INFO_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, (status, note) in _CRITERIA.items():
        line = f"[{status}] {name}"
        if note:
            line += f" ({note})"
        terminalreporter.write_line(line)
    for line in _INFO_LINES:
        terminalreporter.write_line(f"[INFO] {line}")
