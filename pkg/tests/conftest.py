import numpy as np
import pytest

from qigeo import random_faithful
from qigeo._rng import make_rng, random_hermitian

ACCEPTANCE_LINES = []


@pytest.fixture
def rng(request):
    return make_rng(2024, "tests", request.node.name)


def state(seed, dim, min_eig=0.02):
    return random_faithful(dim, seed, min_eig=min_eig)


def herm(rng, dim, scale=1.0):
    return random_hermitian(rng, dim, scale)


def cmat(rng, dim):
    return rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))


def diag_state(*p):
    from qigeo import DensityMatrix

    return DensityMatrix(np.diag(np.asarray(p, dtype=float)).astype(complex))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
