"""Truncated multivariate Taylor arithmetic over (y1, y2, x1, x2).

A :class:`Jet` stores Taylor coefficients of a scalar field around a point,
truncated at a total y-degree ``ycap`` and total x-degree ``xcap``. Arithmetic
is the exact truncated-Taylor algebra, so every partial derivative up to the
caps is propagated without differencing.

The slot order is fixed: 0 = y1, 1 = y2, 2 = x1, 3 = x2. Callers that need a
univariate or bivariate expansion (e.g. in ``s`` and ``r``) simply seed an
unused slot.
"""
from __future__ import annotations

import functools
import itertools
import math
from typing import Callable, Sequence

import numpy as np

from .errors import CapTooSmall, DomainError

NVARS = 4
Y1, Y2, X1, X2 = range(NVARS)


class JetSpace:
    """Dense index tables for one pair of order caps."""

    def __init__(self, ycap: int, xcap: int):
        if ycap < 0 or xcap < 0:
            raise ValueError("caps must be nonnegative")
        self.ycap = ycap
        self.xcap = xcap
        self.order = ycap + xcap
        ymons = [(a, b) for t in range(ycap + 1) for a in range(t, -1, -1) for b in [t - a]]
        xmons = [(c, d) for t in range(xcap + 1) for c in range(t, -1, -1) for d in [t - c]]
        self.index = [ym + xm for xm in xmons for ym in ymons]
        self.index.sort(key=lambda m: (sum(m), m[::-1]))
        self.pos = {m: k for k, m in enumerate(self.index)}
        self.size = len(self.index)
        self.factorial = np.array(
            [math.prod(math.factorial(k) for k in m) for m in self.index], dtype=float
        )
        ii, jj, kk = [], [], []
        for i, mi in enumerate(self.index):
            for j, mj in enumerate(self.index):
                k = self.pos.get(tuple(p + q for p, q in zip(mi, mj)))
                if k is not None:
                    ii.append(i)
                    jj.append(j)
                    kk.append(k)
        self._i = np.array(ii)
        self._j = np.array(jj)
        self._k = np.array(kk)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.bincount(self._k, weights=a[self._i] * b[self._j], minlength=self.size)

    def contains(self, m: Sequence[int]) -> bool:
        return tuple(m) in self.pos

    def __repr__(self):
        return f"JetSpace(ycap={self.ycap}, xcap={self.xcap})"


@functools.lru_cache(maxsize=None)
def space(ycap: int = 4, xcap: int = 2) -> JetSpace:
    return JetSpace(ycap, xcap)


class Jet:
    """Truncated Taylor expansion of a scalar field in four variables."""

    __slots__ = ("space", "coeffs")
    __array_ufunc__ = None  # numpy scalars defer to our reflected operators

    def __init__(self, sp: JetSpace, coeffs: np.ndarray):
        self.space = sp
        self.coeffs = coeffs

    @classmethod
    def constant(cls, sp: JetSpace, value: float) -> "Jet":
        c = np.zeros(sp.size)
        c[0] = value
        return cls(sp, c)

    @classmethod
    def variable(cls, sp: JetSpace, slot: int, value: float) -> "Jet":
        m = [0] * NVARS
        m[slot] = 1
        if not sp.contains(m):
            raise CapTooSmall(f"slot {slot} has zero order in {sp}")
        c = np.zeros(sp.size)
        c[0] = value
        c[sp.pos[tuple(m)]] = 1.0
        return cls(sp, c)

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def taylor(self, m: Sequence[int]) -> float:
        m = tuple(m) + (0,) * (NVARS - len(m))
        k = self.space.pos.get(m)
        if k is None:
            raise CapTooSmall(f"multi-index {m} outside {self.space}")
        return float(self.coeffs[k])

    def deriv(self, m: Sequence[int]) -> float:
        """True partial derivative for multi-index ``m`` over (y1, y2, x1, x2)."""
        m = tuple(m) + (0,) * (NVARS - len(m))
        k = self.space.pos.get(m)
        if k is None:
            raise CapTooSmall(f"multi-index {m} outside {self.space}")
        return float(self.coeffs[k] * self.space.factorial[k])

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.space is not self.space:
                raise ValueError(f"mixing jets from {self.space} and {other.space}")
            return other.coeffs
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is not None:
            return Jet(self.space, self.coeffs + oc)
        c = self.coeffs.copy()
        c[0] += other
        return Jet(self.space, c)

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is not None:
            return Jet(self.space, self.coeffs - oc)
        c = self.coeffs.copy()
        c[0] -= other
        return Jet(self.space, c)

    def __rsub__(self, other):
        c = -self.coeffs
        c[0] += other
        return Jet(self.space, c)

    def __neg__(self):
        return Jet(self.space, -self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        oc = self._coerce(other)
        if oc is not None:
            return Jet(self.space, self.space.mul(self.coeffs, oc))
        return Jet(self.space, self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * reciprocal(other)
        if other == 0:
            raise DomainError("division by zero")
        return Jet(self.space, self.coeffs / other)

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, k):
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        k = int(k)
        if k < 0:
            return reciprocal(self) ** (-k)
        result = Jet.constant(self.space, 1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self):
        return f"Jet(value={self.value!r}, {self.space})"


def compose(a: Jet, taylor_coeffs: Sequence[float]) -> Jet:
    """Evaluate f(a) given f's Taylor coefficients c_k = f^(k)(a0)/k! at a0 = a.value."""
    h = a - a.value
    out = Jet.constant(a.space, taylor_coeffs[0])
    p = None
    for k in range(1, min(len(taylor_coeffs), a.space.order + 1)):
        p = h if p is None else p * h
        out = out + p * taylor_coeffs[k]
    return out


def reciprocal(a: Jet) -> Jet:
    a0 = a.value
    if a0 == 0:
        raise DomainError("division by zero")
    n = a.space.order
    return compose(a, [(-1) ** k * a0 ** (-1 - k) for k in range(n + 1)])


def _sqrt_coeffs(a0: float, n: int):
    out = [math.sqrt(a0)]
    for k in range(1, n + 1):
        # binom(1/2, k) recurrence
        out.append(out[-1] * (0.5 - (k - 1)) / k / a0)
    return out


def sqrt(a):
    """Square root for floats and jets; nonpositive arguments are a DomainError."""
    if isinstance(a, Jet):
        if not a.value > 0:
            raise DomainError(f"sqrt of nonpositive value {a.value!r}")
        return compose(a, _sqrt_coeffs(a.value, a.space.order))
    if not a > 0:
        raise DomainError(f"sqrt of nonpositive value {a!r}")
    return math.sqrt(a)


def exp(a):
    if isinstance(a, Jet):
        e = math.exp(a.value)
        return compose(a, [e / math.factorial(k) for k in range(a.space.order + 1)])
    return math.exp(a)


def log(a):
    """Natural log for floats and jets; nonpositive arguments are a DomainError."""
    a0 = a.value if isinstance(a, Jet) else a
    if not a0 > 0:
        raise DomainError(f"log of nonpositive value {a0!r}")
    if isinstance(a, Jet):
        n = a.space.order
        return compose(a, [math.log(a0)] + [(-1) ** (k + 1) / (k * a0**k) for k in range(1, n + 1)])
    return math.log(a0)


def value(a) -> float:
    return a.value if isinstance(a, Jet) else float(a)


def lift(x: Sequence[float], y: Sequence[float], ycap: int = 4, xcap: int = 2):
    """Seed coordinate jets; returns ``((x1, x2), (y1, y2))``.

    With ``xcap == 0`` the x coordinates come back as plain floats.
    """
    sp = space(ycap, xcap)
    ys = (Jet.variable(sp, Y1, float(y[0])), Jet.variable(sp, Y2, float(y[1])))
    if xcap == 0:
        xs = (float(x[0]), float(x[1]))
    else:
        xs = (Jet.variable(sp, X1, float(x[0])), Jet.variable(sp, X2, float(x[1])))
    return xs, ys


def extract(j, m: Sequence[int]) -> float:
    """Partial derivative of ``j`` for multi-index ``m``; constants have zero derivatives."""
    if isinstance(j, Jet):
        return j.deriv(m)
    return float(j) if not any(m) else 0.0


# Fourth-order accurate central stencils: derivative order -> (offsets, weights).
_STENCILS = {
    0: ((0,), (1.0,)),
    1: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
    2: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
    3: ((-3, -2, -1, 1, 2, 3), (1 / 8, -1.0, 13 / 8, -13 / 8, 1.0, -1 / 8)),
    4: ((-3, -2, -1, 0, 1, 2, 3), (-1 / 6, 2.0, -6.5, 56 / 6, -6.5, 2.0, -1 / 6)),
}

DEFAULT_STEPS = {1: 1e-3, 2: 1e-3, 3: 2e-3, 4: 5e-3}


def fd_oracle(
    f: Callable[[tuple, tuple], float],
    point: tuple,
    m: Sequence[int],
    h: float | None = None,
) -> float:
    """Central finite-difference estimate of a partial of ``f(x, y)``.

    ``point`` is ``(x, y)``; ``m`` is a multi-index over (y1, y2, x1, x2).
    Mixed partials use the tensor product of one-dimensional stencils.
    """
    m = tuple(m) + (0,) * (NVARS - len(m))
    if any(k > 4 for k in m):
        raise CapTooSmall("finite-difference stencils go up to order 4 per variable")
    if h is None:
        h = DEFAULT_STEPS.get(sum(m), DEFAULT_STEPS[4]) if sum(m) else 0.0
    x, y = point
    base = [float(y[0]), float(y[1]), float(x[0]), float(x[1])]
    stencils = [_STENCILS[k] for k in m]
    total = 0.0
    for combo in itertools.product(*(zip(*st) for st in stencils)):
        weight = 1.0
        p = list(base)
        for slot, (off, w) in enumerate(combo):
            weight *= w
            p[slot] += off * h
        total += weight * f((p[2], p[3]), (p[0], p[1]))
    return total / h ** sum(m) if sum(m) else total
