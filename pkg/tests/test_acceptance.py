"""Runs every acceptance criterion at its stated tolerance; use ``-s`` to see the report lines."""
import pytest

from ptsmatrix.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number):
    res = run_criterion(number)
    print(res.line())
    assert res.passed, res.line()
