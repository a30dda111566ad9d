import math

import numpy as np
import pytest
from scipy import integrate as si

from finslercheck.errors import QuadratureFailure
from finslercheck.quadrature import GAUSS, KRONROD, NODES, gk15, integrate


def test_rule_weights():
    assert KRONROD.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS.sum() == pytest.approx(2.0, abs=1e-15)
    # K15 is exact for degree 22, G7 for degree 13
    for deg in range(0, 23, 2):
        assert KRONROD @ NODES**deg == pytest.approx(2 / (deg + 1), abs=1e-14)
    for deg in range(0, 14, 2):
        assert GAUSS @ NODES**deg == pytest.approx(2 / (deg + 1), abs=1e-14)


@pytest.mark.parametrize(
    "f, a, b",
    [
        (math.exp, 0.0, 1.0),
        (lambda t: 1 / (1 + 25 * t * t), -1.0, 1.0),
        (lambda t: math.sqrt(t), 0.0, 2.0),
        (lambda t: math.log(t), 1e-9, 1.0),
        (lambda t: math.sin(30 * t), 0.0, 3.0),
    ],
)
def test_against_scipy(f, a, b):
    want, _ = si.quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
    got, err = integrate(f, a, b)
    assert got == pytest.approx(want, abs=1e-9, rel=1e-9)
    assert integrate(f, b, a)[0] == pytest.approx(-got, rel=1e-15)


def test_vector_valued():
    f = lambda t: np.array([t, t * t, math.cos(t)])  # noqa: E731
    got, _ = integrate(f, 0.0, 2.0)
    assert got == pytest.approx([2.0, 8 / 3, math.sin(2.0)], abs=1e-12)


def test_empty_interval():
    assert integrate(math.exp, 1.0, 1.0)[0] == 0.0


def test_breakpoints_split_the_path():
    # kink at 0.3 is resolved exactly when used as a breakpoint
    f = lambda t: abs(t - 0.3)  # noqa: E731
    got, _ = integrate(f, 0.0, 1.0, breakpoints=[0.3])
    assert got == pytest.approx(0.5 * 0.09 + 0.5 * 0.49, abs=1e-14)


def test_failure_is_explicit():
    with pytest.raises(QuadratureFailure):
        integrate(lambda t: 1 / t, 1e-300, 1.0, limit=20)


def test_single_panel_error_estimate():
    val, err = gk15(math.exp, 0.0, 1.0)
    assert val == pytest.approx(math.e - 1, abs=1e-15)
    assert err < 1e-10
