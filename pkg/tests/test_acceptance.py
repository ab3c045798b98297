"""One test per acceptance criterion, at the stated tolerances and runtimes.

Each test prints a single [PASS]/[FAIL] line (visible with pytest -s or -v
in the captured output) and fails if the check fails or runs over budget.
"""

import pytest

from trcalc.checks import CRITERIA, run_check


@pytest.mark.parametrize("number,name", [(k, name) for k, name, _ in CRITERIA],
                         ids=[f"criterion_{k}" for k, _, _ in CRITERIA])
def test_criterion(number, name):
    result = run_check(number)
    print(result.line())
    assert result.passed, result.detail
    assert result.within_budget, f"{name}: {result.seconds:.3f} s exceeds {result.budget} s"
