import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from effectus.instances import M, Pfn, Prob, Quantum

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def pfn():
    return Pfn()


@pytest.fixture(scope="session")
def prob():
    return Prob()


@pytest.fixture(scope="session")
def quantum():
    return Quantum()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def ket(*amps):
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)


def proj(v):
    return np.outer(v, v.conj())


__all__ = ["M", "ket", "proj"]


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
