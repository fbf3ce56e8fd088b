import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from woods_saxon_nu import PotentialSpec  # noqa: E402


@pytest.fixture
def demo_spec():
    """Natural units, D = 10, l = 0 gives l~ = 3.5 and alpha = 2."""
    return PotentialSpec(V0=100.0, R0=1.0, a=0.5, hbar2_over_2mu=1.0, D=10)


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
