"""Compare H from its defining expression with the two closed forms over a radius grid.

The defining expression tracks (3 f2 + c1 r^2) r^2 / w; the alternative
prefactor (3 f2 + c1) only agrees at r = 1.
"""
import argparse

import numpy as np

from finslercheck.curvature import h_closed_forms, h_scalars
from finslercheck.params import ParamSet
from finslercheck.spray import family_PQ


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--f2", default="0")
    ap.add_argument("--c1", default="1")
    ap.add_argument("--s-frac", type=float, default=0.0, help="s as a fraction of r")
    args = ap.parse_args()

    p = ParamSet(f2=args.f2, c1=args.c1)
    P = lambda r, s: family_PQ(p, r, s)[0]  # noqa: E731
    Q = lambda r, s: family_PQ(p, r, s)[1]  # noqa: E731
    print(f"{'r':>6} {'s':>8} {'H':>14} {'derived':>14} {'printed':>14} {'H - derived':>12}")
    for r in np.linspace(0.5, 3.0, 11):
        s = args.s_frac * r
        H = h_scalars(P, Q, p.n, r, s).H
        c = h_closed_forms(p, r, s)
        print(f"{r:6.2f} {s:8.3f} {H:14.8f} {c['derived']:14.8f} {c['printed']:14.8f} {H - c['derived']:12.1e}")


if __name__ == "__main__":
    main()
