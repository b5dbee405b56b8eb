"""Acceptance criteria 1-12, each at its stated tolerance.

Every check prints one ``[PASS]``/``[FAIL]`` line; run ``pytest -s`` or
``qbell reproduce all`` to see them.
"""

import pytest

from qbell.reproduce import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i:02d}" for i in range(1, len(CHECKS) + 1)])
def test_acceptance(check, capsys):
    result = check()
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, result.line()
