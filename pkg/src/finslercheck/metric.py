"""The family Finsler function, its fundamental tensor, and metric sprays.

``F = u * exp(Phi(r, s)) * a(r)`` where ``Phi`` is the integral from 0 to s of
:func:`phi_integrand`. Derivatives of ``Phi`` in ``s`` come straight from the
integrand; derivatives in ``r`` come from integrating the integrand lifted to
a jet in ``r``. Nothing is differenced through the adaptive quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets, quadrature
from .errors import DegenerateMetric, DomainError, SingularIntegrand
from .jets import X1, Y1, Jet
from .params import ParamSet, scan_singular, a_integrand, log_a
from .scalars import invariants, require_cone

MetricFunction = Callable  # (x, y) -> float or Jet


def _integrand_parts(p: ParamSet, t, r):
    c0 = p.c0(r)
    k = 2 * r * r * c0 - 1
    w = jets.sqrt(r * r - t * t)
    num = (p.c + 1) * t * t - k * t * w - 2 * r * r * p.c
    den2 = k * w - (p.c + 1) * t
    return num, r * r - t * t, den2


def phi_integrand(p: ParamSet, t, r):
    """The integrand of the exponent of F, with the integration variable ``t``."""
    if jets.value(t) ** 2 >= jets.value(r) ** 2:
        raise DomainError("integrand needs t^2 < r^2")
    num, den1, den2 = _integrand_parts(p, t, r)
    if jets.value(den2) == 0:
        raise SingularIntegrand("integrand denominator vanishes")
    return num / (den1 * den2)


def _phi_split(p: ParamSet, t, r):
    """Same value as :func:`phi_integrand`, without the removable 0/0 at c = 0."""
    if jets.value(t) ** 2 >= jets.value(r) ** 2:
        raise DomainError("integrand needs t^2 < r^2")
    lead = -t / (r * r - t * t)
    return lead if p.c == 0 else lead + _pole_part(p, t, r)


def _pole_part(p: ParamSet, t, r):
    # the numerator equals -t * den2 - 2 r^2 c, so
    # phi = -t / (r^2 - t^2) - 2 r^2 c / ((r^2 - t^2) den2)
    _, den1, den2 = _integrand_parts(p, t, r)
    return -2 * r * r * p.c / (den1 * den2)


def exponent_integral(p: ParamSet, s: float, r) -> float | np.ndarray:
    """Integral of the integrand over [0, s]; jet-valued ``r`` yields a coefficient vector.

    The ``-t / (r^2 - t^2)`` part integrates to ``log(w / r)``; only the
    remainder, which vanishes for ``c = 0``, goes through quadrature. Any zero
    of the second denominator factor is then a true pole.
    """
    r0 = jets.value(r)
    if s * s >= r0 * r0:
        raise DomainError("integrand needs s^2 < r^2")
    closed = 0.5 * jets.log((r * r - s * s) / (r * r))
    if isinstance(closed, Jet):
        closed = closed.coeffs
    if p.c == 0 or s == 0.0:
        return closed
    scan_singular(lambda t: _integrand_parts(p, t, r0)[2], 0.0, s, "F integrand denominator")
    if isinstance(r, Jet):
        f = lambda t: _pole_part(p, t, r).coeffs  # noqa: E731
    else:
        f = lambda t: _pole_part(p, t, r)  # noqa: E731
    val, _ = quadrature.integrate(f, 0.0, s, atol=1e-12, rtol=1e-12)
    return closed + val


@dataclass(frozen=True)
class MetricValue:
    F: float
    jet: Jet | None = None


class FamilyMetric:
    """Callable ``F(x, y)`` for the family, accepting float or jet coordinates."""

    def __init__(self, params: ParamSet, r0: float = 1.0):
        self.params = params
        self.r0 = r0

    def __call__(self, x, y):
        require_cone(x, y)
        r, u, s = invariants(x, y)
        if not any(isinstance(v, Jet) for v in (*x, *y)):
            lg = exponent_integral(self.params, s, r) + log_a(self.params, r, self.r0)
            return u * math.exp(lg)
        sp = next(v.space for v in (*y, *x) if isinstance(v, Jet))
        return u * jets.exp(self._log_factor(sp, r, s))

    def _log_factor(self, sp, r, s):
        p = self.params
        r0, s0 = jets.value(r), jets.value(s)
        ns, nr = sp.order, sp.xcap
        aux = jets.space(ns, nr)
        S = Jet.variable(aux, Y1, s0)
        R = Jet.variable(aux, X1, r0) if nr else r0
        phi = _phi_split(p, S, R)
        line = jets.space(0, nr)
        R1 = Jet.variable(line, X1, r0) if nr else r0
        if nr:
            base = np.asarray(exponent_integral(p, s0, R1))
            g = a_integrand(p, R1).coeffs
        else:
            base = np.array([exponent_integral(p, s0, r0)])
            g = np.zeros(1)
        base = base.copy()
        base[0] += log_a(p, r0, self.r0)
        # bivariate Taylor coefficients of log(F/u) in (ds, dr)
        coef = {}
        for b in range(nr + 1):
            coef[(0, b)] = base[line.pos[(0, 0, b, 0)]]
            if b:
                coef[(0, b)] += g[line.pos[(0, 0, b - 1, 0)]] / b
        for a in range(1, ns + 1):
            for b in range(nr + 1):
                coef[(a, b)] = phi.taylor((a - 1, 0, b, 0)) / a
        ds = s - s0
        dr = (r - r0) if isinstance(r, Jet) else None
        ds_pow = [1.0]
        for _ in range(ns):
            ds_pow.append(ds * ds_pow[-1])
        dr_pow = [1.0]
        if dr is not None:
            for _ in range(nr):
                dr_pow.append(dr * dr_pow[-1])
        out = Jet.constant(sp, coef[(0, 0)])
        for (a, b), v in coef.items():
            if (a, b) == (0, 0) or v == 0.0 or b >= len(dr_pow):
                continue
            out = out + ds_pow[a] * dr_pow[b] * v
        return out


def eval_F(p: ParamSet, x, y, r0: float = 1.0, with_jet: bool = False, ycap: int = 2, xcap: int = 1) -> MetricValue:
    F = FamilyMetric(p, r0)
    val = F(x, y)
    jet = None
    if with_jet:
        xs, ys = jets.lift(x, y, ycap, xcap)
        jet = F(xs, ys)
    return MetricValue(F=float(val), jet=jet)


def _mi(*slots):
    m = [0, 0, 0, 0]
    for k in slots:
        m[k] += 1
    return tuple(m)


@dataclass(frozen=True)
class FundamentalTensor:
    g11: float
    g12: float
    g22: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12 * self.g12

    @property
    def trace(self) -> float:
        return self.g11 + self.g22

    @property
    def positive_definite(self) -> bool:
        return self.g11 > 0 and self.det > 0

    @property
    def degenerate(self) -> bool:
        return abs(self.det) < 1e-12 * self.trace**2 or self.trace == 0.0


def _tensor_from_jet(F2: Jet) -> FundamentalTensor:
    return FundamentalTensor(
        0.5 * F2.deriv(_mi(0, 0)), 0.5 * F2.deriv(_mi(0, 1)), 0.5 * F2.deriv(_mi(1, 1))
    )


def fundamental_tensor(F: MetricFunction, x, y) -> FundamentalTensor:
    """``g_ij = 1/2 d^2 F^2 / dy^i dy^j`` by jets."""
    xs, ys = jets.lift(x, y, 2, 0)
    Fj = F(xs, ys)
    if not isinstance(Fj, Jet):
        Fj = Jet.constant(jets.space(2, 0), Fj)
    return _tensor_from_jet(Fj * Fj)


def spray_from_metric(F: MetricFunction, x, y) -> tuple[float, float]:
    """Geodesic spray ``G^i = 1/4 g^{il} (y^k d_xk d_yl F^2 - d_xl F^2)``."""
    xs, ys = jets.lift(x, y, 2, 1)
    Fj = F(xs, ys)
    F2 = Fj * Fj
    g = _tensor_from_jet(F2)
    if g.degenerate:
        raise DegenerateMetric(f"det g = {g.det:.3e} at x={tuple(x)}, y={tuple(y)}")
    ginv = np.linalg.inv(g.matrix)
    yv = np.array([float(y[0]), float(y[1])])
    rhs = np.empty(2)
    for l in range(2):
        mixed = sum(yv[k] * F2.deriv(_mi(2 + k, l)) for k in range(2))
        rhs[l] = mixed - F2.deriv(_mi(2 + l))
    G = 0.25 * ginv @ rhs
    return float(G[0]), float(G[1])
