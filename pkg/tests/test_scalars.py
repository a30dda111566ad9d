import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finslercheck.errors import OrientationViolation, ZeroDirection
from finslercheck.scalars import identity_residuals, scalar_triple

coord = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ((1, 0), (0, 1), (1, 1, 0, 1, 1)),
        ((3, 4), (0, 2), (5, 2, 4, 3, 6)),
        ((1, 0), (2, 0), (1, 2, 1, 0, 0)),
    ],
)
def test_scalar_triple_examples(x, y, expected):
    t = scalar_triple(x, y)
    assert (t.r, t.u, t.s, t.w, t.cross) == pytest.approx(expected, abs=1e-15)


def test_zero_direction():
    with pytest.raises(ZeroDirection):
        scalar_triple((1, 2), (0, 0))


def test_identity_residuals_examples():
    assert identity_residuals((3, 4), (0, 2)) == (0.0, 0.0, 0.0)
    assert identity_residuals((1, 0), (0, 1)) == (0.0, 0.0, 0.0)
    t = scalar_triple((3, 4), (0, 2))
    assert t.u * t.s == 8 and t.u * t.w == 6 and t.u**2 * t.s * t.w == 48


def test_identity_residuals_orientation():
    with pytest.raises(OrientationViolation):
        identity_residuals((1, 0), (0, -1))
    with pytest.raises(OrientationViolation):
        identity_residuals((1, 0), (1, 0))


@given(coord, coord, coord, coord)
def test_pythagorean_split(x1, x2, y1, y2):
    if math.hypot(y1, y2) < 1e-3:
        return
    t = scalar_triple((x1, x2), (y1, y2))
    lhs = (t.u * t.s) ** 2 + (t.u * t.w) ** 2
    assert lhs == pytest.approx(t.u**2 * t.r**2, rel=1e-12, abs=1e-12)


@given(coord, coord, coord, coord, st.floats(min_value=0.1, max_value=10))
def test_scale_covariance(x1, x2, y1, y2, lam):
    if math.hypot(y1, y2) < 1e-3:
        return
    a = scalar_triple((x1, x2), (y1, y2))
    b = scalar_triple((x1, x2), (lam * y1, lam * y2))
    assert (b.r, b.s, b.w) == pytest.approx((a.r, a.s, a.w), rel=1e-12, abs=1e-12)
    assert b.u == pytest.approx(lam * a.u, rel=1e-12)
    assert b.cross == pytest.approx(lam * a.cross, rel=1e-12, abs=1e-12)


@settings(max_examples=300)
@given(
    st.floats(0.1, 5), st.floats(0, 2 * math.pi), st.floats(0.05, math.pi - 0.05), st.floats(0.1, 5)
)
def test_residuals_vanish_on_cone(r, theta, psi, u):
    x = (r * math.cos(theta), r * math.sin(theta))
    y = (u * math.cos(theta + psi), u * math.sin(theta + psi))
    scale = (u * r) ** 2
    res = np.abs(identity_residuals(x, y))
    assert np.all(res <= 1e-12 * np.array([u * r, u * r, scale]))
