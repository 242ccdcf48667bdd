"""Acceptance matrix: one test per criterion, each printing a PASS/FAIL line."""
import pytest

from tycat.acceptance import TITLES, AcceptanceConfig, run_all

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all(AcceptanceConfig())}


@pytest.mark.parametrize("number", sorted(TITLES))
def test_criterion(results, number):
    r = results[number]
    line = r.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    for part in r.parts:
        print("   ", part)
    assert r.passed, line
