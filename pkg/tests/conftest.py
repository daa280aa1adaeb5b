from __future__ import annotations

import pytest

from kuwatasurf import demos
from kuwatasurf.exactmath.scalars import Field
from kuwatasurf.kuwata import KuwataFamily

QSQRT3 = Field(-3)


@pytest.fixture(scope="session")
def fam16():
    """Legendre data (16, 1, 6, 1): Delta(E)/Delta(F) = 64 = 4^3."""
    return KuwataFamily.from_legendre(16, 1, 6, 1)


@pytest.fixture(scope="session")
def top():
    return demos.top_surface()


@pytest.fixture(scope="session")
def top_sigmas():
    return demos.top_sigmas()


_CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """record(n, ok, detail): one pass/fail line per acceptance criterion."""
    store = request.config.stash.setdefault(_CRITERIA, {})

    def record(n: int, ok: bool, detail: str):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        store[n] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_CRITERIA, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for n in sorted(store):
            terminalreporter.write_line(store[n])
