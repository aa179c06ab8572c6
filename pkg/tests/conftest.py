"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import pytest

CRITERIA = {
    1: "Adem relations of weight ≤ 1 verify",
    2: "d₁∘d₁ = 0 symbolically for KT, KQ, KGL2",
    3: "KT collapses at E² on all presets",
    4: "split injectivity of α on all presets",
    5: "KGL2 d₁(τ²) = ρ³ over ℝ",
    6: "graded Witt ring of F₃, F₅, F₇, F₉",
    7: "KQ low columns match closed forms",
    8: "KT filtration closed forms and crosscheck",
    9: "hom tables and d₁ spans",
    10: "artifacts are byte-deterministic",
}

_outcomes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call":
        if hasattr(report, "wasxfail"):
            state = "xfail"
        else:
            state = report.outcome
        _outcomes.setdefault(n, []).append(state)
    elif report.when == "setup" and report.outcome != "passed":
        _outcomes.setdefault(n, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        states = _outcomes.get(n)
        if not states:
            verdict = "NOT RUN"
        elif all(s == "passed" for s in states):
            verdict = "PASS"
        else:
            verdict = "FAIL"
        bad = sum(s != "passed" for s in states or [])
        extra = f"  ({bad} of {len(states)} checks failed or xfailed)" if bad else ""
        terminalreporter.write_line(f"criterion {n:2d}: {verdict:4s}  {title}{extra}")
