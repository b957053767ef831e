"""Acceptance criteria, each at its stated tolerance.

Run directly (``python3 tests/test_acceptance.py``) for a plain report, or via
pytest, which also prints the report in the terminal summary.
"""

import sys

import pytest

from graphglue.checks import CHECKS, run_check

SEED = 0
REPORT: list[str] = []


@pytest.mark.parametrize("key", [k for k, _, _ in CHECKS])
def test_criterion(key):
    result = run_check(key, SEED)
    line = result.line()
    REPORT.append(line)
    print(line)
    assert result.passed, line


if __name__ == "__main__":
    results = [run_check(k, SEED) for k, _, _ in CHECKS]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
