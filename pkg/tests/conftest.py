from functools import lru_cache

import pytest

from pgl2graphs.cli import Context
from pgl2graphs.field_tower import prime_power

QS = (3, 5, 7, 9, 11, 13)
SMALL_QS = (3, 5, 7, 9)


@lru_cache(maxsize=None)
def world(q: int) -> Context:
    """Field, group, characters, predictor and coset spaces, shared across tests."""
    p, e = prime_power(q)
    return Context(p, e)


@pytest.fixture(params=QS, ids=lambda q: f"q{q}")
def any_q(request):
    return world(request.param)


@pytest.fixture(params=SMALL_QS, ids=lambda q: f"q{q}")
def small_q(request):
    return world(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[i])
