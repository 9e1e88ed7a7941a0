from __future__ import annotations

import pytest

from dirac_dsp.model import PhysicalConstants, PotentialSpec

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def c137() -> PhysicalConstants:
    return PhysicalConstants(c=137.0)


@pytest.fixture(scope="session")
def vdsp0() -> PotentialSpec:
    return PotentialSpec.vector(0, 50000)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
