import random
from functools import lru_cache

import pytest

from thompsonf.cayley import ball

ACCEPTANCE_LINES: dict[int, str] = {}


@lru_cache(maxsize=None)
def cached_ball(radius: int, with_neighbors: bool = False):
    return ball(radius, with_neighbors=with_neighbors)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def ball6():
    return cached_ball(6)


@pytest.fixture(scope="session")
def ball8():
    return cached_ball(8)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
