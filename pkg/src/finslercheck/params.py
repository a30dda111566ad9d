"""Family parameters and the radial factor a(r) of the metric."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import jets, quadrature
from .errors import ConfigError, DomainError, FinslerCheckError, SingularIntegrand
from .expr import RadialExpr

EXPR_FIELDS = ("c0", "f1", "f2", "c1", "c2")


def _as_expr(v) -> RadialExpr:
    return v if isinstance(v, RadialExpr) else RadialExpr(v)


@dataclass(frozen=True)
class ParamSet:
    """Constant ``c`` plus the radial functions c0, f1, f2, c1, c2.

    ``n`` is the ambient dimension fed to the general-dimension formulas.
    """

    c: float = 0.0
    c0: RadialExpr = field(default_factory=lambda: RadialExpr("1"))
    f1: RadialExpr = field(default_factory=lambda: RadialExpr("1"))
    f2: RadialExpr = field(default_factory=lambda: RadialExpr("1"))
    c1: RadialExpr = field(default_factory=lambda: RadialExpr("0"))
    c2: RadialExpr = field(default_factory=lambda: RadialExpr("1"))
    n: float = 2.0

    def __post_init__(self):
        for name in EXPR_FIELDS:
            e = _as_expr(getattr(self, name))
            object.__setattr__(self, name, e)
            extra = e.variables - {"r"}
            if extra:
                raise ConfigError(f"{name} may only depend on r, found {sorted(extra)}")
        c = float(self.c)
        if not math.isfinite(c):
            raise ConfigError("c must be finite")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "n", float(self.n))

    @classmethod
    def from_dict(cls, d: dict) -> "ParamSet":
        unknown = set(d) - {"c", "n", *EXPR_FIELDS}
        if unknown:
            raise ConfigError(f"unknown parameter fields: {sorted(unknown)}")
        missing = {"c", *EXPR_FIELDS} - set(d)
        if missing:
            raise ConfigError(f"missing parameter fields: {sorted(missing)}")
        if not isinstance(d["c"], (int, float)) or isinstance(d["c"], bool):
            raise ConfigError("c must be a number")
        try:
            return cls(
                c=d["c"],
                n=d.get("n", 2),
                **{k: RadialExpr(d[k]) for k in EXPR_FIELDS},
            )
        except (FinslerCheckError, TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad parameter expression: {exc}") from exc

    def to_dict(self) -> dict:
        out = {"c": self.c}
        out.update({k: getattr(self, k).source for k in EXPR_FIELDS})
        out["n"] = self.n
        return out


def load_params(path) -> ParamSet:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read parameter file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("parameter file must hold a JSON object")
    return ParamSet.from_dict(data)


def a_denominator(p: ParamSet, t):
    return t * (2 * p.c0(t) * t * t - 1)


def a_integrand(p: ParamSet, t):
    """Integrand of log a(r); accepts floats or jets in ``t``."""
    c0 = p.c0(t)
    q = 2 * c0 * t * t - 1
    num = q + 2 * p.c * p.c - 2 * p.c
    den = t * q
    if jets.value(den) == 0:
        raise SingularIntegrand("log a(r) integrand has a vanishing denominator")
    return -num / den


def scan_singular(func, a: float, b: float, what: str, samples: int = 65) -> None:
    """Raise SingularIntegrand if ``func`` vanishes or changes sign on [a, b]."""
    ts = np.linspace(a, b, samples)
    vals = []
    for t in ts:
        try:
            vals.append(float(func(float(t))))
        except DomainError as exc:
            raise SingularIntegrand(f"{what} undefined at t={t:.6g}: {exc}") from exc
    vals = np.array(vals)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.any(np.abs(vals) <= 1e-12 * scale):
        raise SingularIntegrand(f"{what} vanishes on [{a:.6g}, {b:.6g}]")
    if np.any(np.sign(vals[1:]) != np.sign(vals[:-1])):
        raise SingularIntegrand(f"{what} changes sign on [{a:.6g}, {b:.6g}]")


def log_a(p: ParamSet, r: float, r0: float = 1.0) -> float:
    if r == r0:
        return 0.0
    scan_singular(lambda t: a_denominator(p, t), r0, r, "a(r) denominator")
    val, _ = quadrature.integrate(lambda t: a_integrand(p, t), r0, r, atol=1e-10, rtol=1e-10)
    return val


def a_of_r(p: ParamSet, r: float, r0: float = 1.0) -> float:
    """``exp`` of the integral of the a(r) integrand from ``r0`` to ``r``."""
    return math.exp(log_a(p, r, r0))
