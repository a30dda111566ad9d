"""Sweep random family parameters and tabulate |B|, |E| per route and min |H|.

    python3 scripts/sweep_family.py --families 20 --points 50
"""
import argparse

import numpy as np

from finslercheck import curvature as cv
from finslercheck.sampling import SampleRegion, random_params
from finslercheck.verify import Tolerances, run_verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", type=int, default=20)
    ap.add_argument("--points", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cols = ["B"] + list(cv.ROUTES) + ["min|H|", "skip"]
    print(f"{'#':>3} " + " ".join(f"{c:>16}" for c in cols))
    for k in range(args.families):
        p = random_params(rng)
        region = SampleRegion(count=args.points, seed=args.seed * 1000 + k)
        rep, _ = run_verify(p, region, Tolerances(), diagnostics=False)
        row = [rep["tensors_summary"]["B"]["max_rel"]]
        row += [rep["routes"][r]["max_rel"] for r in cv.ROUTES]
        row += [rep["tensors_summary"]["H"]["min_abs"], len(rep["skipped_points"])]
        print(f"{k:>3} " + " ".join(f"{v:>16.3e}" if isinstance(v, float) else f"{str(v):>16}" for v in row))


if __name__ == "__main__":
    main()
