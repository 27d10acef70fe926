import numpy as np
import pytest

from luckgrid.model import SimParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def small_params():
    """A dense little world where events fire every few steps."""
    return SimParams(n_agents=40, world_side=20.0, n_events=30, steps=15,
                     location_radius=3.0, event_radius=1.5, seed=7)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "acceptance":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
