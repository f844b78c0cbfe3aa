import math
from fractions import Fraction

import numpy as np
import pytest


def rational_round(alpha, c):
    """floor(alpha*c/255 + 1/2) in exact rational arithmetic."""
    return math.floor(Fraction(alpha * c, 255) + Fraction(1, 2))


@pytest.fixture(scope="session")
def oracle_table():
    """256x256 table of the exact rounded product, indexed [alpha, c]."""
    return np.array([[rational_round(a, c) for c in range(256)] for a in range(256)])


@pytest.fixture(scope="session")
def grid():
    a, c = np.meshgrid(np.arange(256, dtype=np.uint32), np.arange(256, dtype=np.uint32),
                       indexing="ij")
    return a, c


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary."""
    name = request.node.get_closest_marker("criterion").args[0]
    callspec = getattr(request.node, "callspec", None)
    if callspec is not None:
        name = f"{name} [{callspec.id}]"
    details = []
    yield details.append
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    _ACCEPTANCE[name] = (ok, "; ".join(details) if ok else "see failure above")


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        ok, info = _ACCEPTANCE[name]
        terminalreporter.line(f"{'PASS' if ok else 'FAIL'}  {name}  {info}")
