"""Acceptance gate: every registered criterion must pass at its stated
tolerance.  One pass/fail line is printed per criterion (run pytest -s to
see them); the heavy Monte Carlo profiles are shared across criteria."""

import pytest

from hbnum.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"{c.cid:02d}-{c.title.replace(' ', '-')}")
def test_criterion(criterion):
    result = run_criterion(criterion)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{result.cid:2d}/12] {result.title:<32s} {status}  "
          f"({result.seconds:.1f}s)  {result.details}")
    assert result.passed, f"criterion {result.cid} failed: {result.details}"
