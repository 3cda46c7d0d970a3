"""The acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines and their
details, or use ``inducedtangles reproduce`` for the same table.
"""
import pytest

from inducedtangles.reproduce import CRITERIA, run


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    (result,) = run([number])
    print(result.line())
    for detail in result.details:
        print(f"      {detail}")
    assert result.passed, "\n".join([result.line()] + result.details)
