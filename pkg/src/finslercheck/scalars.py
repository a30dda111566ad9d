"""Scalar invariants of a spherically symmetric structure on the plane.

For a point ``x`` and direction ``y``::

    r = |x|,  u = |y|,  s = <x, y> / u,  w = sqrt(r^2 - s^2)

The family formulas only hold on the positive cone ``x1*y2 - x2*y1 > 0``,
where ``u*w`` equals the cross product itself rather than its absolute value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import jets
from .errors import OrientationViolation, ZeroDirection


class Point2(NamedTuple):
    x1: float
    x2: float


class Direction2(NamedTuple):
    y1: float
    y2: float


@dataclass(frozen=True)
class ScalarTriple:
    r: float
    u: float
    s: float
    w: float
    cross: float


def cross(x, y):
    return x[0] * y[1] - x[1] * y[0]


def dot(x, y):
    return x[0] * y[0] + x[1] * y[1]


def scalar_triple(x, y) -> ScalarTriple:
    y1, y2 = float(y[0]), float(y[1])
    if y1 == 0.0 and y2 == 0.0:
        raise ZeroDirection("direction y must be nonzero")
    x1, x2 = float(x[0]), float(x[1])
    u = math.hypot(y1, y2)
    c = x1 * y2 - x2 * y1
    # w from the cross product: no cancellation near s = +-r
    return ScalarTriple(r=math.hypot(x1, x2), u=u, s=(x1 * y1 + x2 * y2) / u, w=abs(c) / u, cross=c)


def invariants(x, y):
    """``(r, u, s)`` for float or jet coordinates."""
    u = jets.sqrt(y[0] * y[0] + y[1] * y[1])
    r = jets.sqrt(x[0] * x[0] + x[1] * x[1])
    return r, u, dot(x, y) / u


def require_cone(x, y, cone: int = 1) -> None:
    c = jets.value(cross(x, y))
    if not c * cone > 0:
        side = "positive" if cone > 0 else "negative"
        raise OrientationViolation(f"cross product {c!r} is not in the {side} cone")


def identity_residuals(x, y) -> tuple[float, float, float]:
    """Left-minus-right residuals of the three expansions of u*s, u*w and u^2*s*w."""
    t = scalar_triple(x, y)
    if not t.cross > 0:
        raise OrientationViolation(f"cross product {t.cross!r} must be positive")
    x1, x2 = float(x[0]), float(x[1])
    y1, y2 = float(y[0]), float(y[1])
    w = math.sqrt(t.r * t.r - t.s * t.s)
    res4 = t.u * t.s - (x1 * y1 + x2 * y2)
    res5 = t.u * w - (x1 * y2 - x2 * y1)
    res6 = t.u**2 * t.s * w - (x1**2 * y1 * y2 - x1 * x2 * y1**2 + x1 * x2 * y2**2 - x2**2 * y1 * y2)
    return res4, res5, res6
