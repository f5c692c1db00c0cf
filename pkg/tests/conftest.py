from functools import lru_cache

import pytest

from peelkit import catalog
from peelkit.peeling import PeelConfig, peel_all_pairs

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def all_runs(name: str, handedness: str = "right", mirrored: bool = False):
    p = catalog.polyhedron(name, mirrored=mirrored)
    return tuple(peel_all_pairs(p, PeelConfig(handedness=handedness)))


@pytest.fixture(scope="session")
def runs():
    return all_runs


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
