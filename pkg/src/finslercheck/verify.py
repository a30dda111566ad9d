"""Sweep pipeline behind ``finslercheck verify``.

For each sampled cone point it computes the Berwald tensor, the four mean
Berwald routes, H and its closed forms, the route constant kappa, and (as
reported diagnostics only) the flag curvature and mean Landsberg curvature.
Verdicts are pure functions of the numbers stored in the report.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from . import curvature as cv
from .errors import DegenerateMetric, FinslerCheckError
from .expr import RadialExpr
from .jets import fd_oracle
from .metric import FamilyMetric
from .params import ParamSet
from .sampling import SampleRegion, sample_points
from .spray import AnsatzSpray, FamilySpray, family_PQ

H_FORM_MIN_S = 1e-3
KAPPA_REFERENCE = ("s^2/r", "s^3/r^2")
PREDICATES = ("counterexample", "quadratic", "mean_berwald_zero", "h_nonzero", "not_quadratic")


@dataclass(frozen=True)
class Tolerances:
    jet: float = 1e-10
    fd: float = 1e-4
    max_skip_fraction: float = 0.01


@dataclass
class Verdict:
    quadratic: bool
    mean_berwald_zero: bool
    h_nonzero: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def condition7_necessary_counterexample(self) -> bool:
        return self.quadratic and self.mean_berwald_zero and self.h_nonzero

    def predicate(self, name: str) -> bool:
        if name == "counterexample":
            return self.condition7_necessary_counterexample
        if name == "not_quadratic":
            return not self.quadratic
        return bool(getattr(self, name))

    def to_dict(self) -> dict:
        return {
            "quadratic": self.quadratic,
            "mean_berwald_zero": self.mean_berwald_zero,
            "h_nonzero": self.h_nonzero,
            "condition7_necessary_counterexample": self.condition7_necessary_counterexample,
        }


def verdict_from_report(report: dict) -> Verdict:
    """Re-derive the verdict from a report's numbers and tolerances alone."""
    tol = report["config"]["tolerances"]["jet"]
    ts = report["tensors_summary"]
    routes = report["routes"]
    return Verdict(
        quadratic=ts["B"]["max_rel"] is not None and ts["B"]["max_rel"] <= tol,
        mean_berwald_zero=all(
            routes[r]["max_rel"] is not None and routes[r]["max_rel"] <= tol for r in cv.ROUTES if routes[r]["points"]
        ),
        h_nonzero=ts["H"]["min_rel"] is not None and ts["H"]["min_rel"] > tol,
    )


def _third_partials_fd(spray, x, y, h=None) -> np.ndarray:
    out = np.zeros((2, 2, 2, 2))
    for i in range(2):
        f = lambda xx, yy, i=i: float(spray(xx, yy)[i])  # noqa: E731
        for j, k, l in itertools.combinations_with_replacement(range(2), 3):
            m = [0, 0, 0, 0]
            for slot in (j, k, l):
                m[slot] += 1
            v = fd_oracle(f, (x, y), m, h)
            for a, b, c in itertools.permutations((j, k, l)):
                out[i, a, b, c] = v
    return out


def analyse_point(p: ParamSet, spray, x, y, *, r0: float = 1.0, diagnostics: bool = True) -> dict:
    """All per-point quantities used by the sweep."""
    P = lambda r, s: family_PQ(p, r, s)[0]  # noqa: E731
    Q = lambda r, s: family_PQ(p, r, s)[1]  # noqa: E731
    b = cv.berwald(spray, x, y)
    res = {"B_max_abs": b.max_abs, "B_rel": b.relative, "scale": b.scale}
    E = {cv.TRACE: cv.mean_berwald_from(b)}
    gen = cv.e_closed_general(P, Q, p.n, x, y)
    E[cv.GENERAL] = gen
    t = cv.scalar_triple(x, y)
    h = cv.h_scalars(P, Q, p.n, t.r, t.s)
    res["H"] = h.H
    res["H_rel"] = abs(h.H) / (1.0 + h.scale)
    res["H_closed"] = cv.h_closed_forms(p, t.r, t.s)
    if abs(t.s) >= H_FORM_MIN_S:
        E[cv.H_FORM] = cv.e_closed_H(h, x, y)
    d2 = cv.e_family_dim2(p, x, y)
    E[cv.DIM2] = cv.MeanBerwald(
        d2.E_derived.E, cv.DIM2, abs(d2.prefactor_derived) * d2.bracket_scale
    )
    res["bracket_rel"] = d2.bracket_relative
    # each route is judged against the spray scale or its own term sizes, whichever is larger
    res["E"] = {k: v.max_abs for k, v in E.items()}
    res["E_rel"] = {k: v.max_abs / (1.0 + max(b.scale, v.scale)) for k, v in E.items()}

    ref = AnsatzSpray(RadialExpr(KAPPA_REFERENCE[0]), RadialExpr(KAPPA_REFERENCE[1]))
    et = cv.mean_berwald_trace(ref, x, y).E
    eg = cv.e_closed_general(ref.P, ref.Q, p.n, x, y).E
    k = np.unravel_index(np.argmax(np.abs(et)), et.shape)
    res["kappa"] = float(eg[k] / et[k]) if et[k] != 0 else None

    if diagnostics:
        res["diag"] = {}
        F = FamilyMetric(p, r0)
        try:
            res["diag"]["K"] = cv.flag_curvature(F, spray, x, y)
        except FinslerCheckError as exc:
            res["diag"]["K_error"] = type(exc).__name__
        try:
            lb = cv.landsberg(F, spray, x, y)
            res["diag"]["L_max_abs"] = float(np.max(np.abs(lb.L)))
            res["diag"]["J_max_abs"] = float(np.max(np.abs(lb.J)))
        except (DegenerateMetric, FinslerCheckError) as exc:
            res["diag"]["J_error"] = type(exc).__name__
    return res


def _stats(values):
    vals = [v for v in values if v is not None]
    if not vals:
        return {"min": None, "max": None}
    return {"min": min(vals), "max": max(vals)}


def run_verify(
    params: ParamSet,
    region: SampleRegion,
    tol: Tolerances = Tolerances(),
    *,
    override=None,
    r0: float = 1.0,
    predicate: str = "counterexample",
    diagnostics: bool = True,
) -> tuple[dict, Verdict]:
    spray = FamilySpray(params, override)
    samples = sample_points(region)
    results = []
    skipped = []
    for smp in samples:
        try:
            results.append((smp, analyse_point(params, spray, smp.x, smp.y, r0=r0, diagnostics=diagnostics)))
        except FinslerCheckError as exc:
            skipped.append({"index": smp.index, "error": type(exc).__name__, "message": str(exc)})

    def col(key):
        return [res[key] for _, res in results]

    routes = {}
    excluded = []
    for route in cv.ROUTES:
        vals = [(res["E"][route], res["E_rel"][route]) for _, res in results if route in res["E"]]
        routes[route] = {
            "points": len(vals),
            "max_abs": max((a for a, _ in vals), default=None),
            "max_rel": max((r for _, r in vals), default=None),
        }
    for smp, res in results:
        if cv.H_FORM not in res["E"]:
            excluded.append({"index": smp.index, "route": cv.H_FORM, "reason": f"|s| < {H_FORM_MIN_S}"})
    routes[cv.DIM2]["bracket_max_rel"] = max(col("bracket_rel"), default=None)

    H_abs = [abs(v) for v in col("H")]
    H_closed_diff = {
        form: max((abs(res["H"] - res["H_closed"][form]) for _, res in results), default=None)
        for form in ("derived", "printed")
    }
    kappas = [k for k in col("kappa") if k is not None]
    B_rel = col("B_rel")
    tensors_summary = {
        "B": {"max_abs": max(col("B_max_abs"), default=None), "max_rel": max(B_rel, default=None)},
        "H": {
            "min_abs": min(H_abs, default=None),
            "max_abs": max(H_abs, default=None),
            "min_rel": min(col("H_rel"), default=None),
            "max_rel": max(col("H_rel"), default=None),
            "closed_form_max_abs_diff": H_closed_diff,
        },
    }
    if diagnostics:
        diag = [res["diag"] for _, res in results]
        tensors_summary["diagnostics"] = {
            "K": _stats([d.get("K") for d in diag]),
            "J_max_abs": max((d["J_max_abs"] for d in diag if "J_max_abs" in d), default=None),
            "L_max_abs": max((d["L_max_abs"] for d in diag if "L_max_abs" in d), default=None),
            "failures": {
                "K": sum("K_error" in d for d in diag),
                "J": sum("J_error" in d for d in diag),
            },
        }

    report = {
        "config": {
            "params": params.to_dict(),
            "region": region.to_dict(),
            "tolerances": asdict(tol),
            "r0": r0,
            "spray_override": [e.source for e in override] if override else None,
            "predicate": predicate,
        },
        "samples": [
            {"index": s.index, "x": list(s.x), "y": list(s.y), **asdict(s.triple)} for s in samples
        ],
        "tensors_summary": tensors_summary,
        "routes": routes,
        "kappa": {
            "reference": {"P": KAPPA_REFERENCE[0], "Q": KAPPA_REFERENCE[1]},
            "mean": float(np.mean(kappas)) if kappas else None,
            "min": min(kappas, default=None),
            "max": max(kappas, default=None),
            "points": len(kappas),
        },
        "excluded_points": excluded,
        "skipped_points": skipped,
    }
    verdict = verdict_from_report(report)

    if results:
        smp, res = max(results, key=lambda pr: pr[1]["B_rel"])
        jet_B = cv.berwald(spray, smp.x, smp.y)
        fd_B = _third_partials_fd(spray, smp.x, smp.y)
        agree = float(np.max(np.abs(fd_B - jet_B.B))) / (1.0 + jet_B.scale)
        report["witness"] = {
            "index": smp.index,
            "x": list(smp.x),
            "y": list(smp.y),
            "jet_third_max_abs": jet_B.max_abs,
            "fd_third_max_abs": float(np.max(np.abs(fd_B))),
            "fd_jet_max_rel_diff": agree,
            "fd_agrees": agree <= tol.fd,
        }
        verdict.diagnostics["witness"] = report["witness"]
    report["verdict"] = verdict.to_dict()
    report["verdict"]["predicate"] = predicate
    report["verdict"]["predicate_holds"] = verdict.predicate(predicate)
    report["skip_fraction"] = len(skipped) / len(samples)
    return report, verdict
