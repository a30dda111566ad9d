"""Estimate the constant between the closed mean Berwald formula and half the Berwald trace."""
import argparse

import numpy as np

from finslercheck import curvature as cv
from finslercheck.expr import RadialExpr
from finslercheck.sampling import SampleRegion, sample_points
from finslercheck.spray import AnsatzSpray

PAIRS = [("s^2/r", "s^3/r^2"), ("exp(s/r)", "s*sqrt(r^2 - s^2)"), ("r*s^3 - s", "1/(2 + s)"), ("s^5", "exp(-s^2)")]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    pts = sample_points(SampleRegion(count=args.points, seed=args.seed))
    for Ps, Qs in PAIRS:
        spray = AnsatzSpray(RadialExpr(Ps), RadialExpr(Qs))
        ks = []
        for smp in pts:
            et = cv.mean_berwald_trace(spray, smp.x, smp.y).E
            eg = cv.e_closed_general(spray.P, spray.Q, 2, smp.x, smp.y).E
            # least-squares ratio over all four entries
            ks.append(float(np.sum(eg * et) / np.sum(et * et)))
        print(f"P={Ps:<12} Q={Qs:<22} kappa mean={np.mean(ks):.12f} spread={np.ptp(ks):.1e}")


if __name__ == "__main__":
    main()
