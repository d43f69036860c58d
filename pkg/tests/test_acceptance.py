"""Acceptance criteria 1-10. Each test prints one PASS/FAIL line."""

import pytest

from gauss_sphere.reporting.suite import CRITERIA, criterion


@pytest.mark.parametrize("ident", [c[0] for c in CRITERIA], ids=lambda i: f"criterion_{i}")
def test_acceptance_criterion(ident, capsys):
    result = criterion(ident, "quick")
    with capsys.disabled():
        print("\n" + result.line())
    detail = {k: v for k, v in result.detail.items() if k != "traceback"}
    assert result.passed, f"{result.line()}\n{detail}\n{result.detail.get('traceback', '')}"
