import numpy as np
import pytest
from hypothesis import settings

from timoshenko_lie.algebra import CASE_KINDS, CaseParams

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=CASE_KINDS)
def params(request):
    return CaseParams.from_case(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_params(kind, rng):
    rho1, rho2, k, b = rng.uniform(0.5, 2.0, 4)
    if kind == "greater":
        return CaseParams.from_case(kind, rho1, rho2, k, b, lam=rng.uniform(0.3, 2.0))
    if kind == "less":
        return CaseParams.from_case(kind, rho1, rho2, k, b, mu=rng.uniform(0.2, 0.9) * 2 * np.sqrt(k * rho2))
    return CaseParams.from_case(kind, rho1, rho2, k, b)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
