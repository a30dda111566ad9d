import numpy as np
import pytest

from finslercheck.sampling import SampleRegion, random_params, sample_points


def rel_err(a, b, ref=0.0):
    """|a - b| relative to the largest of |a|, |b| and a reference magnitude."""
    denom = max(abs(a), abs(b), abs(ref))
    return 0.0 if denom == 0 else abs(a - b) / denom


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture(scope="session")
def cone_points():
    return sample_points(SampleRegion(count=40, seed=7))


@pytest.fixture(scope="session")
def random_paramsets():
    g = np.random.default_rng(99)
    return [random_params(g) for _ in range(8)]


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
