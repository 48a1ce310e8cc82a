import sys
from functools import lru_cache

import pytest
from hypothesis import settings

from scheme_forge.tatra import tatra_omega

settings.register_profile("ci", max_examples=50, deadline=None)
settings.load_profile("ci")


@lru_cache(maxsize=None)
def cached_omega(q, n):
    return tatra_omega(q, n)


@pytest.fixture(scope="session")
def omega():
    return cached_omega


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
