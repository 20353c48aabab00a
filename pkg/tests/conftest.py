from functools import lru_cache

import pytest

from taquin.enumeration import enumerate_all
from taquin.poset import Poset, from_covers, is_connected

# diamond elements: w=0 < x=1, y=2 < z=3
W, X, Y, Z = 0, 1, 2, 3


@lru_cache(maxsize=None)
def connected_posets(n: int) -> tuple[Poset, ...]:
    return tuple(P for P in enumerate_all(n) if is_connected(P))


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    return tuple(enumerate_all(n))


@pytest.fixture
def diamond():
    return from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def pendant():
    """Diamond w<x,y<z, a top t above z, and q covered by z only."""
    return from_covers(6, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (5, 3)])


# acceptance lines collected by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
