from __future__ import annotations

import pytest

from reghom import SurfaceSignature, validate_seifert

ACCEPTANCE_LINES: list[str] = []

G1K1 = SurfaceSignature(1, 1)


@pytest.fixture
def flat():
    return validate_seifert([[0, 0], [-1, 0]], G1K1)


@pytest.fixture
def trefoil():
    return validate_seifert([[-1, 1], [0, -1]], G1K1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
