from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qre.coeff import ScalarField
from qre.hecke import standard_r
from qre.realg import build_re_presentation


@pytest.fixture(scope="session")
def F():
    return ScalarField(("q",))


@pytest.fixture(scope="session")
def R2():
    return standard_r(2)


@pytest.fixture(scope="session")
def R3():
    return standard_r(3)


@pytest.fixture(scope="session")
def A2(R2):
    return build_re_presentation(R2, degree=6)


@pytest.fixture(scope="session")
def sphere_m1(A2, F):
    from qre.sphere import build_sphere
    return build_sphere(A2, F(-1), degree=6)


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def acceptance(request):
    """record(k, ok, detail) stores one line per acceptance criterion."""
    def record(k: int, ok: bool, detail: str) -> bool:
        request.config._acceptance[k] = (ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        ok, detail = lines[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
