"""Berwald, mean Berwald, Landsberg and flag curvature of planar sprays.

Mean Berwald curvature is computed along four independent routes:

* ``trace``            half the trace ``B^m_{mij}`` of the Berwald tensor (jets)
* ``general-formula``  the closed four-term formula in P, Q and their s-derivatives
* ``H-form``           the same formula regrouped around the scalar H
* ``dim2-family``      the two-dimensional family formula (prefactor times bracket)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .errors import DegenerateMetric, DomainError, SAxisSingular
from .jets import Jet
from .metric import MetricFunction, fundamental_tensor
from .params import ParamSet
from .scalars import scalar_triple
from .spray import SprayFunction, pq_value

TRACE = "trace"
GENERAL = "general-formula"
H_FORM = "H-form"
DIM2 = "dim2-family"
ROUTES = (TRACE, GENERAL, H_FORM, DIM2)


def _mi(*slots) -> tuple:
    m = [0, 0, 0, 0]
    for k in slots:
        m[k] += 1
    return tuple(m)


def spray_jets(spray: SprayFunction, x, y, ycap: int, xcap: int = 0) -> tuple[Jet, Jet]:
    xs, ys = jets.lift(x, y, ycap, xcap)
    sp = ys[0].space
    return tuple(g if isinstance(g, Jet) else Jet.constant(sp, g) for g in spray(xs, ys))


def second_y_scale(G) -> float:
    """Largest second y-partial of the spray: the magnitude scale for 'vanishes' tests."""
    return max(abs(g.deriv(_mi(a, b))) for g in G for a in range(2) for b in range(a, 2))


def vanishes(max_abs: float, scale: float, tol: float) -> bool:
    return max_abs <= tol * (1.0 + scale)


@dataclass(frozen=True)
class BerwaldTensor:
    """``B[i, j, k, l] = d^3 G^i / dy^j dy^k dy^l``."""

    B: np.ndarray
    scale: float = 0.0

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.B)))

    @property
    def relative(self) -> float:
        return self.max_abs / (1.0 + self.scale)


def berwald(spray: SprayFunction, x, y) -> BerwaldTensor:
    G = spray_jets(spray, x, y, 3)
    B = np.empty((2, 2, 2, 2))
    for i in range(2):
        for j in range(2):
            for k in range(j, 2):
                for l in range(k, 2):
                    v = G[i].deriv(_mi(j, k, l))
                    for a, b, c in {(j, k, l), (j, l, k), (k, j, l), (k, l, j), (l, j, k), (l, k, j)}:
                        B[i, a, b, c] = v
    return BerwaldTensor(B, second_y_scale(G))


@dataclass(frozen=True)
class MeanBerwald:
    E: np.ndarray
    route: str
    scale: float = 0.0

    @property
    def E11(self) -> float:
        return float(self.E[0, 0])

    @property
    def E12(self) -> float:
        return float(self.E[0, 1])

    @property
    def E22(self) -> float:
        return float(self.E[1, 1])

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.E)))

    @property
    def relative(self) -> float:
        return self.max_abs / (1.0 + self.scale)


def mean_berwald_from(b: BerwaldTensor) -> MeanBerwald:
    return MeanBerwald(0.5 * np.einsum("mmij->ij", b.B), TRACE, b.scale)


def mean_berwald_trace(spray: SprayFunction, x, y) -> MeanBerwald:
    return mean_berwald_from(berwald(spray, x, y))


@dataclass(frozen=True)
class HScalars:
    H: float
    H_s: float
    sHs_plus_H: float
    n: float
    s: float
    scale: float = 0.0  # magnitude of the two terms whose sum is H


def h_scalars(P: Callable, Q: Callable, n: float, r: float, s: float) -> HScalars:
    """H = (n+1)(P - s P_s) + (r^2 - s^2)(Q_s - s Q_ss), its s-derivative, and s H_s + H."""
    if s * s >= r * r:
        raise DomainError("H needs s^2 < r^2")
    d = pq_value(P, Q, r, s)
    w2 = r * r - s * s
    t1 = (n + 1) * (d.P - s * d.P_s)
    t2 = w2 * (d.Q_s - s * d.Q_ss)
    H = t1 + t2
    # d/ds of each factor, product rule
    H_s = (n + 1) * (-s * d.P_ss) + (-2 * s) * (d.Q_s - s * d.Q_ss) + w2 * (-s * d.Q_sss)
    return HScalars(H, H_s, s * H_s + H, n, s, abs(t1) + abs(t2))


def h_closed_forms(p: ParamSet, r: float, s: float) -> dict:
    """Closed-form H for the family: derived prefactor (3 f2 + c1 r^2) vs printed (3 f2 + c1)."""
    w = math.sqrt(r * r - s * s)
    f2, c1 = float(p.f2(r)), float(p.c1(r))
    return {
        "derived": (3 * f2 + c1 * r * r) * r * r / w,
        "printed": (3 * f2 + c1) * r * r / w,
    }


def e_closed_general(P: Callable, Q: Callable, n: float, x, y) -> MeanBerwald:
    """The four-term mean Berwald formula, evaluated term by term."""
    t = scalar_triple(x, y)
    r, u, s = t.r, t.u, t.s
    d = pq_value(P, Q, r, s)
    xv = np.array([float(x[0]), float(x[1])])
    yv = np.array([float(y[0]), float(y[1])])
    delta_c = (n + 1) * (d.P - s * d.P_s) + (r * r - s * s) * (d.Q_s - s * d.Q_ss)
    yy_c = (
        (n + 1) * (s * s * d.P_ss + s * d.P_s - d.P)
        + r * r * (s * s * d.Q_sss + s * d.Q_ss - d.Q_s)
        + 3 * s * s * d.Q_s
        - 3 * s**3 * d.Q_ss
        - s**4 * d.Q_sss
    )
    xx_c = (n + 1) * d.P_ss + 2 * (d.Q_s - s * d.Q_ss) + (r * r - s * s) * d.Q_sss
    E = (
        np.eye(2) / u * delta_c
        + np.outer(yv, yv) / u**3 * yy_c
        + np.outer(xv, xv) / u * xx_c
        - s * (np.outer(xv, yv) + np.outer(yv, xv)) / u**2 * xx_c
    )
    scale = max(abs(delta_c) / u, abs(yy_c) * t.u**2 / u**3, abs(xx_c) * r * r / u, abs(s * xx_c) * 2 * r / u)
    return MeanBerwald(E, GENERAL, scale)


def e_closed_H(h: HScalars, x, y) -> MeanBerwald:
    """Mean Berwald curvature regrouped around H, H_s and s H_s + H."""
    t = scalar_triple(x, y)
    u, s = t.u, t.s
    if abs(s) < 1e-9:
        raise SAxisSingular(f"|s| = {abs(s):.3e} too small for the H-form")
    xv = np.array([float(x[0]), float(x[1])])
    yv = np.array([float(y[0]), float(y[1])])
    E = (
        np.eye(2) / u * h.H
        - np.outer(yv, yv) / u**3 * h.sHs_plus_H
        + (s * (np.outer(xv, yv) + np.outer(yv, xv)) - u * np.outer(xv, xv)) / (s * u**2) * h.H_s
    )
    scale = max(abs(h.H) / u, abs(h.sHs_plus_H) / u, 3 * t.r**2 * abs(h.H_s) / abs(s) / u)
    return MeanBerwald(E, H_FORM, scale)


@dataclass(frozen=True)
class Dim2Family:
    """Prefactor times bracket, with both the printed and the derived prefactor."""

    bracket: np.ndarray
    prefactor_printed: float
    prefactor_derived: float
    bracket_scale: float

    @property
    def E_printed(self) -> MeanBerwald:
        return MeanBerwald(self.prefactor_printed * self.bracket, DIM2)

    @property
    def E_derived(self) -> MeanBerwald:
        return MeanBerwald(self.prefactor_derived * self.bracket, DIM2)

    @property
    def bracket_relative(self) -> float:
        return float(np.max(np.abs(self.bracket))) / self.bracket_scale


def dim2_bracket(x, y) -> tuple[np.ndarray, float]:
    t = scalar_triple(x, y)
    r, u, s = t.r, t.u, t.s
    xv = np.array([float(x[0]), float(x[1])])
    yv = np.array([float(y[0]), float(y[1])])
    br = (
        np.eye(2) * u * u * (r * r - s * s)
        - r * r * np.outer(yv, yv)
        + s * u * (np.outer(xv, yv) + np.outer(yv, xv))
        - u * u * np.outer(xv, xv)
    )
    return br, u * u * r * r


def e_family_dim2(p: ParamSet, x, y) -> Dim2Family:
    t = scalar_triple(x, y)
    r, u = t.r, t.u
    w = math.sqrt(r * r - t.s * t.s)
    f2, c1 = float(p.f2(r)), float(p.c1(r))
    br, scale = dim2_bracket(x, y)
    denom = u**3 * w**3
    return Dim2Family(
        bracket=br,
        prefactor_printed=(3 * f2 + c1) * r * r / denom,
        prefactor_derived=(3 * f2 + c1 * r * r) * r * r / denom,
        bracket_scale=scale,
    )


@dataclass(frozen=True)
class Landsberg:
    L: np.ndarray  # L[i, j, k]
    J: np.ndarray  # J[k]

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.L)), np.max(np.abs(self.J))))


def landsberg(F: MetricFunction, spray: SprayFunction, x, y) -> Landsberg:
    """``L_ijk = -1/2 y_m B^m_ijk`` with ``y_m = g_ml y^l``, and ``J_k = g^ij L_ijk``."""
    g = fundamental_tensor(F, x, y)
    if g.degenerate:
        raise DegenerateMetric(f"det g = {g.det:.3e}")
    gm = g.matrix
    b = berwald(spray, x, y)
    ylow = gm @ np.array([float(y[0]), float(y[1])])
    L = -0.5 * np.einsum("m,mijk->ijk", ylow, b.B)
    J = np.einsum("ij,ijk->k", np.linalg.inv(gm), L)
    return Landsberg(L, J)


def riemann_from_partials(G, dGy, dGx, dGyy, dGxy, y) -> np.ndarray:
    """``R^i_k`` from spray values and partials (index order: [i, j, k] = d_j d_k G^i)."""
    R = np.empty((2, 2))
    for i in range(2):
        for k in range(2):
            R[i, k] = (
                2 * dGx[i, k]
                - sum(y[j] * dGxy[i, j, k] for j in range(2))
                + 2 * sum(G[j] * dGyy[i, j, k] for j in range(2))
                - sum(dGy[i, j] * dGy[j, k] for j in range(2))
            )
    return R


def spray_curvature(spray: SprayFunction, x, y) -> np.ndarray:
    """Riemann curvature ``R^i_k`` of a spray, all partials from one jet evaluation."""
    G = spray_jets(spray, x, y, 2, 1)
    vals = np.array([g.value for g in G])
    dGy = np.array([[g.deriv(_mi(j)) for j in range(2)] for g in G])
    dGx = np.array([[g.deriv(_mi(2 + k)) for k in range(2)] for g in G])
    dGyy = np.array([[[g.deriv(_mi(j, k)) for k in range(2)] for j in range(2)] for g in G])
    dGxy = np.array([[[g.deriv(_mi(2 + j, k)) for k in range(2)] for j in range(2)] for g in G])
    return riemann_from_partials(vals, dGy, dGx, dGyy, dGxy, [float(y[0]), float(y[1])])


def flag_curvature(F: MetricFunction, spray: SprayFunction, x, y, n: int = 2) -> float:
    """``K = R^m_m / ((n - 1) F^2)``."""
    Fv = jets.value(F(tuple(map(float, x)), tuple(map(float, y))))
    if not Fv > 0:
        raise DomainError(f"F = {Fv!r} must be positive")
    R = spray_curvature(spray, x, y)
    return float(np.trace(R)) / ((n - 1) * Fv * Fv)


@dataclass
class CurvatureReport:
    """Everything computed at one point, plus verdicts against stored tolerances."""

    x: tuple
    y: tuple
    B_rel: float
    E_rel: dict = field(default_factory=dict)
    H: HScalars | None = None
    H_closed: dict = field(default_factory=dict)
    kappa: float | None = None
    tol: float = 1e-10

    @property
    def quadratic(self) -> bool:
        return self.B_rel <= self.tol

    @property
    def mean_berwald_zero(self) -> bool:
        return all(v <= self.tol for v in self.E_rel.values())
