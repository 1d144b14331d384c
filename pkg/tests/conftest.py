from pathlib import Path

import pytest

from kbforge.golden import BUILTIN_NAMES, builtin_base, builtin_layout
from kbforge.model import CodePoint

DATA = Path(__file__).parent / "data"

_criteria: list[tuple[str, bool]] = []


def reference_table(name):
    """The printed layout table as {(key, reg): (unicode token, keysym)}.

    Read with plain string handling so it stays independent of the package
    parsers and emitters.
    """
    cells = {}
    lines = (DATA / f"{name}.table").read_text("utf-8").splitlines()[2:]
    for upper, lower in zip(lines[::2], lines[1::2]):
        key, u1, u3, k1, k3 = upper.split(" ")
        _, u2, u4, k2, k4 = lower.split(" ")
        for reg, u, k in ((1, u1, k1), (2, u2, k2), (3, u3, k3), (4, u4, k4)):
            cells[key, reg] = (u, k)
    return cells


def cp(char):
    return CodePoint(ord(char))


@pytest.fixture(params=BUILTIN_NAMES)
def name(request):
    return request.param


@pytest.fixture
def bds():
    return builtin_layout("bds")


@pytest.fixture
def bds_base():
    return builtin_base("bds")


@pytest.fixture
def latin():
    return builtin_layout("latin")


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion; a summary line is printed at the end."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield
    rep = getattr(request.node, "rep_call", None)
    _criteria.append((label, rep is not None and rep.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
