from __future__ import annotations

import sys

import pytest

from hklab.curvefile import builtin_curve
from hklab.poly import parse_ideal


@pytest.fixture(scope="session")
def curve():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin_curve(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def f625():
    return builtin_curve("fermat4_f625").field


@pytest.fixture
def ideal():
    def make(C, text="X,Y,Z"):
        return parse_ideal(text, C.field)

    return make


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
