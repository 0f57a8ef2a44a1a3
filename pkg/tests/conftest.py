import functools

import pytest

from hermcover.autgrp import full_group
from hermcover.curve import CurveFamilyParams, build_cn, build_cn_prime

GRID = [(2, 1, 1), (3, 1, 1), (2, 1, 2)]  # (p, e, n)


@functools.lru_cache(maxsize=None)
def params(p, e, n):
    return CurveFamilyParams.normalized(p, e, n)


@functools.lru_cache(maxsize=None)
def curve(p, e, n):
    return build_cn(params(p, e, n))


@functools.lru_cache(maxsize=None)
def tu(p, e, n):
    return build_cn_prime(params(p, e, n))


@functools.lru_cache(maxsize=None)
def group(p, e, n):
    return full_group(params(p, e, n))


@pytest.fixture(params=GRID, ids=lambda t: f"q{t[0] ** t[1]}n{t[2]}")
def grid_point(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
    missing = [n for n in range(1, 13) if n not in results]
    if missing:
        terminalreporter.write_line(f"not run: {missing}")
