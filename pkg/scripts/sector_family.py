#!/usr/bin/env python3
"""Sweep the sector family and compare estimated Hardy numbers to pi/(2 alpha).

Usage: python scripts/sector_family.py [--points-per-decade 8] [--r-max 1e4]
"""

import argparse
import math
import time

from hbnum.estimator import estimate_hardy_number
from hbnum.geometry import DomainSpec, Sector
from hbnum.green import green_evaluator
from hbnum.psi import build_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points-per-decade", type=int, default=8)
    ap.add_argument("--r-max", type=float, default=1e4)
    ap.add_argument("--angles", type=float, nargs="*",
                    default=[math.pi / 6, math.pi / 4, math.pi / 3,
                             math.pi / 2, 2 * math.pi / 3, math.pi])
    args = ap.parse_args()

    print(f"{'half angle':>12} {'h estimate':>12} {'pi/(2a)':>10} "
          f"{'rel err':>9} {'spread':>9} {'time':>6}")
    for half in args.angles:
        spec = DomainSpec(Sector(0, 0.0, half), 1.0)
        t0 = time.time()
        profile = build_profile(green_evaluator(spec), 0.25, args.r_max,
                                args.points_per_decade)
        est = estimate_hardy_number(spec, profile)
        want = math.pi / (2.0 * half)
        rel = abs(est.value - want) / want
        print(f"{half:12.6f} {est.value:12.6f} {want:10.4f} "
              f"{rel:9.2%} {est.confidence:9.5f} {time.time() - t0:5.1f}s")


if __name__ == "__main__":
    main()
