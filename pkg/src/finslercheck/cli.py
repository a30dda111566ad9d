"""Command-line front end: ``finslercheck verify | eval | sample``.

Exit codes: 0 predicate holds (or command succeeded), 1 predicate fails,
2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import curvature as cv
from .errors import ConfigError, FinslerCheckError
from .metric import FamilyMetric, eval_F, fundamental_tensor
from .params import ParamSet, load_params
from .report import dumps
from .sampling import SampleRegion, sample_points
from .scalars import scalar_triple
from .spray import FamilySpray, eval_PQ, family_PQ, parse_override, quadratic_coeffs
from .verify import PREDICATES, Tolerances, run_verify

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
EVAL_QUANTITIES = ("F", "g", "spray", "PQ", "B", "E", "H", "K", "L", "J")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}") from exc
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finslercheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, sampling=True):
        p.add_argument("--params", type=Path, help="ParamSet JSON file (default: built-in family)")
        p.add_argument("--r0", type=float, default=1.0, help="base point of the a(r) integral")
        p.add_argument("--out", type=Path, help="write JSON here instead of stdout")
        p.add_argument("--spray-override", help="perturbation 'e1, e2': G^i += u^2 e_i(r, s)")
        p.add_argument("--tol-jet", type=float, default=1e-10)
        p.add_argument("--tol-fd", type=float, default=1e-4)
        if sampling:
            add_region(p)

    def add_region(p):
        p.add_argument("--r-min", type=float, default=0.5)
        p.add_argument("--r-max", type=float, default=2.0)
        p.add_argument("--margin", type=float, default=0.2)
        p.add_argument("--count", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="sweep the family and report verdicts")
    common(v)
    v.add_argument("--predicate", choices=PREDICATES, default="counterexample")
    v.add_argument("--max-skip", type=float, default=0.01, help="allowed fraction of failed points")
    v.add_argument("--no-diagnostics", action="store_true", help="skip K and J")
    v.add_argument("--stamp", action="store_true", help="add a generation timestamp under 'meta'")

    e = sub.add_parser("eval", help="evaluate quantities at one point")
    common(e, sampling=False)
    e.add_argument("--x", type=_pair, required=True, metavar="X1,X2")
    e.add_argument("--y", type=_pair, required=True, metavar="Y1,Y2")
    e.add_argument("--what", default="spray", help=f"comma list from {','.join(EVAL_QUANTITIES)}")

    s = sub.add_parser("sample", help="print the deterministic sample manifest")
    add_region(s)
    s.add_argument("--out", type=Path)
    return parser


def _emit(doc: dict, out: Path | None) -> None:
    text = dumps(doc)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _params(args) -> ParamSet:
    return load_params(args.params) if args.params else ParamSet()


def _region(args) -> SampleRegion:
    return SampleRegion(r_min=args.r_min, r_max=args.r_max, margin=args.margin, count=args.count, seed=args.seed)


def cmd_verify(args) -> int:
    params = _params(args)
    region = _region(args)
    override = parse_override(args.spray_override) if args.spray_override else None
    tol = Tolerances(jet=args.tol_jet, fd=args.tol_fd, max_skip_fraction=args.max_skip)
    report, verdict = run_verify(
        params, region, tol, override=override, r0=args.r0,
        predicate=args.predicate, diagnostics=not args.no_diagnostics,
    )
    if args.stamp:
        report["meta"] = {"generated_at": datetime.now(timezone.utc).isoformat()}
    _emit(report, args.out)
    if report["skip_fraction"] > tol.max_skip_fraction:
        print(f"numerical failures at {len(report['skipped_points'])} points", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK if verdict.predicate(args.predicate) else EXIT_FAIL


def _eval_one(what: str, params: ParamSet, spray, F, x, y, r0: float) -> dict:
    t = scalar_triple(x, y)
    if what == "F":
        return {"F": eval_F(params, x, y, r0).F}
    if what == "g":
        g = fundamental_tensor(F, x, y)
        return {"g11": g.g11, "g12": g.g12, "g22": g.g22, "det": g.det, "positive_definite": g.positive_definite}
    if what == "spray":
        G = spray(x, y)
        quad = quadratic_coeffs(params, x)(y) if not spray.override else None
        return {"G": [float(G[0]), float(G[1])], "quadratic_form": None if quad is None else quad.tolist()}
    if what == "PQ":
        return asdict(eval_PQ(params, t.r, t.s))
    if what == "B":
        b = cv.berwald(spray, x, y)
        return {"B": b.B, "max_abs": b.max_abs, "max_rel": b.relative}
    if what == "E":
        P = lambda r, s: family_PQ(params, r, s)[0]  # noqa: E731
        Q = lambda r, s: family_PQ(params, r, s)[1]  # noqa: E731
        routes = {cv.TRACE: cv.mean_berwald_trace(spray, x, y).E, cv.GENERAL: cv.e_closed_general(P, Q, params.n, x, y).E}
        h = cv.h_scalars(P, Q, params.n, t.r, t.s)
        try:
            routes[cv.H_FORM] = cv.e_closed_H(h, x, y).E
        except FinslerCheckError as exc:
            routes[cv.H_FORM] = {"error": type(exc).__name__}
        routes[cv.DIM2] = cv.e_family_dim2(params, x, y).E_derived.E
        return {"routes": routes}
    if what == "H":
        P = lambda r, s: family_PQ(params, r, s)[0]  # noqa: E731
        Q = lambda r, s: family_PQ(params, r, s)[1]  # noqa: E731
        h = cv.h_scalars(P, Q, params.n, t.r, t.s)
        closed = cv.h_closed_forms(params, t.r, t.s)
        return {
            "H": h.H, "H_s": h.H_s, "sHs_plus_H": h.sHs_plus_H, "n": h.n,
            "H_closed_derived": closed["derived"], "H_closed_printed": closed["printed"],
        }
    if what == "K":
        return {"K": cv.flag_curvature(F, spray, x, y)}
    lb = cv.landsberg(F, spray, x, y)
    return {"L": lb.L} if what == "L" else {"J": lb.J}


def cmd_eval(args) -> int:
    params = _params(args)
    override = parse_override(args.spray_override) if args.spray_override else None
    wanted = [w.strip() for w in args.what.split(",") if w.strip()]
    bad = [w for w in wanted if w not in EVAL_QUANTITIES]
    if bad or not wanted:
        raise ConfigError(f"unknown quantity {bad}; choose from {EVAL_QUANTITIES}")
    x, y = args.x, args.y
    spray = FamilySpray(params, override)
    F = FamilyMetric(params, args.r0)
    t = scalar_triple(x, y)
    record = {"x": list(x), "y": list(y), "triple": asdict(t)}
    for w in wanted:
        record[w] = _eval_one(w, params, spray, F, x, y, args.r0)
    _emit(record, args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    region = _region(args)
    manifest = {
        "region": region.to_dict(),
        "samples": [{"index": s.index, "x": list(s.x), "y": list(s.y), **asdict(s.triple)} for s in sample_points(region)],
    }
    _emit(manifest, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": cmd_verify, "eval": cmd_eval, "sample": cmd_sample}[args.command]
    np.seterr(all="ignore")
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FinslerCheckError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
