"""Sprays of the spherically symmetric ansatz ``G^i = u P y^i + u^2 Q x^i``.

A *spray function* throughout the package is any callable
``spray(x, y) -> (G1, G2)`` that accepts float or jet coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import jets
from .errors import CollinearInputs, ConfigError, DomainError
from .expr import RadialExpr
from .jets import Y1, Jet
from .params import ParamSet
from .scalars import invariants, require_cone, scalar_triple

SprayFunction = Callable


def family_PQ(p: ParamSet, r, s):
    """P and Q of the family at (r, s); floats or jets. Uses w = sqrt(r^2 - s^2)."""
    if jets.value(s) ** 2 >= jets.value(r) ** 2:
        raise DomainError("P, Q need s^2 < r^2")
    w = jets.sqrt(r * r - s * s)
    P = p.f1(r) * s + p.f2(r) * w
    Q = p.c0(r) + p.c2(r) * s * s + p.c1(r) * s * w
    return P, Q


def s_derivatives(func: Callable, r: float, s: float, order: int = 3) -> list[float]:
    """``[f, f_s, ..., d^order f/ds^order]`` at (r, s) for ``func(r, s)``."""
    sp = jets.space(order, 0)
    out = func(r, Jet.variable(sp, Y1, s))
    if not isinstance(out, Jet):
        return [float(out)] + [0.0] * order
    return [out.deriv((k, 0, 0, 0)) for k in range(order + 1)]


@dataclass(frozen=True)
class PQValue:
    P: float
    Q: float
    P_s: float
    P_ss: float
    Q_s: float
    Q_ss: float
    Q_sss: float


def pq_value(Pf: Callable, Qf: Callable, r: float, s: float) -> PQValue:
    dP = s_derivatives(Pf, r, s, 3)
    dQ = s_derivatives(Qf, r, s, 3)
    return PQValue(dP[0], dQ[0], dP[1], dP[2], dQ[1], dQ[2], dQ[3])


def eval_PQ(p: ParamSet, r: float, s: float) -> PQValue:
    return pq_value(lambda r_, s_: family_PQ(p, r_, s_)[0], lambda r_, s_: family_PQ(p, r_, s_)[1], r, s)


def parse_override(text: str) -> tuple[RadialExpr, RadialExpr]:
    """``"e1, e2"`` -> two expressions in (r, s) for the perturbation ``u^2 * e_i``."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError("spray override needs two comma-separated expressions")
    try:
        return RadialExpr(parts[0].strip()), RadialExpr(parts[1].strip())
    except ValueError as exc:
        raise ConfigError(f"bad spray override: {exc}") from exc


class AnsatzSpray:
    """``G^i = u P(r, s) y^i + u^2 Q(r, s) x^i`` for arbitrary callables P, Q."""

    def __init__(self, P: Callable, Q: Callable, cone: int | None = 1):
        self.P = P
        self.Q = Q
        self.cone = cone

    def PQ(self, r, s):
        return self.P(r, s), self.Q(r, s)

    def __call__(self, x, y):
        if self.cone is not None:
            require_cone(x, y, self.cone)
        r, u, s = invariants(x, y)
        P, Q = self.PQ(r, s)
        uP = u * P
        u2Q = u * u * Q
        return uP * y[0] + u2Q * x[0], uP * y[1] + u2Q * x[1]


class FamilySpray(AnsatzSpray):
    """The family spray, optionally with an additive ``u^2 * e_i(r, s)`` perturbation."""

    def __init__(self, params: ParamSet, override: Sequence[RadialExpr] | None = None):
        self.params = params
        self.override = override
        super().__init__(None, None, cone=1)

    def PQ(self, r, s):
        return family_PQ(self.params, r, s)

    def __call__(self, x, y):
        G1, G2 = super().__call__(x, y)
        if self.override:
            r, u, s = invariants(x, y)
            u2 = u * u
            G1 = G1 + u2 * self.override[0](r, s)
            G2 = G2 + u2 * self.override[1](r, s)
        return G1, G2


@dataclass(frozen=True)
class SprayValue:
    G1: float
    G2: float


def spray_closed(p: ParamSet, x, y) -> SprayValue:
    G1, G2 = FamilySpray(p)(x, y)
    return SprayValue(float(G1), float(G2))


@dataclass(frozen=True)
class QuadraticSpray:
    """``G^i = sum_jk coef[i, j, k] y^j y^k`` with ``coef[i]`` symmetric."""

    coef: np.ndarray

    def __call__(self, y) -> np.ndarray:
        yv = np.asarray(y, dtype=float)
        return np.einsum("ijk,j,k->i", self.coef, yv, yv)

    def monomials(self, i: int) -> tuple[float, float, float]:
        """Coefficients of (y1^2, y1*y2, y2^2) in G^i."""
        c = self.coef[i]
        return float(c[0, 0]), float(2 * c[0, 1]), float(c[1, 1])


def quadratic_coeffs(p: ParamSet, x, cone: int = 1) -> QuadraticSpray:
    """Exact y-quadratic coefficients of the family spray at ``x``.

    Built from ``u P = f1 <x,y> + f2 (x1 y2 - x2 y1)`` and
    ``u^2 Q = c0 |y|^2 + c2 <x,y>^2 + c1 <x,y>(x1 y2 - x2 y1)``;
    on the negative cone the f2 and c1 blocks flip sign.
    """
    xv = np.array([float(x[0]), float(x[1])])
    r = float(np.hypot(*xv))
    if r == 0.0:
        raise DomainError("x must be nonzero")
    if cone not in (1, -1):
        raise ValueError("cone must be +1 or -1")
    f1, f2, c0, c1, c2 = (float(getattr(p, k)(r)) for k in ("f1", "f2", "c0", "c1", "c2"))
    rot = np.array([-xv[1], xv[0]])  # <rot, y> = x1 y2 - x2 y1
    lin = f1 * xv + cone * f2 * rot
    quad = c0 * np.eye(2) + c2 * np.outer(xv, xv) + 0.5 * cone * c1 * (np.outer(xv, rot) + np.outer(rot, xv))
    coef = np.empty((2, 2, 2))
    for i in range(2):
        e = np.zeros(2)
        e[i] = 1.0
        coef[i] = 0.5 * (np.outer(e, lin) + np.outer(lin, e)) + xv[i] * quad
    return QuadraticSpray(coef)


def extract_PQ(spray: SprayFunction, x, y) -> tuple[float, float]:
    """Solve ``G^i = u P y^i + u^2 Q x^i`` for (P, Q) at a single point."""
    t = scalar_triple(x, y)
    norm = float(np.hypot(*x)) * t.u
    if abs(t.cross) < 1e-12 * norm or norm == 0.0:
        raise CollinearInputs("x and y must be linearly independent")
    G = np.array([jets.value(g) for g in spray(tuple(map(float, x)), tuple(map(float, y)))])
    A = np.array([[y[0], x[0]], [y[1], x[1]]], dtype=float)
    uP, u2Q = np.linalg.solve(A, G)
    return float(uP / t.u), float(u2Q / t.u**2)
