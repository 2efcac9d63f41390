#!/usr/bin/env python3
"""Scatter walk-on-spheres Green estimates against the closed form.

Reports the error in stderr units for random (z, w0) pairs on the unit disk
and on the exterior of a disk, plus the empirical coverage of the 3-sigma
band.  A sanity harness for the Monte Carlo kernel and its seeding.

Usage: python scripts/wos_vs_closed_form.py [--pairs 50] [--walks 20000]
"""

import argparse
import math
import time

import numpy as np

from hbnum.geometry import Disk, DomainSpec, ExteriorOfDisk, contains
from hbnum.green import WoSConfig, closed_form_green, wos_green


def sample_pairs(spec, rng, n, sampler):
    pairs = []
    while len(pairs) < n:
        z, w0 = complex(sampler()), complex(sampler())
        if abs(z - w0) > 0.1 and contains(spec, z) and contains(spec, w0):
            pairs.append((z, w0))
    return pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=50)
    ap.add_argument("--walks", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--epsilon-shell", type=float, default=1e-4)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cfg = WoSConfig(walks=args.walks, seed=args.seed,
                    epsilon_shell=args.epsilon_shell)
    disk = DomainSpec(Disk(0, 1.0), 0.0)
    ext = DomainSpec(ExteriorOfDisk(5.0, 1.0), 0.0)
    cases = [
        ("disk", disk,
         lambda: 0.85 * math.sqrt(rng.uniform()) * np.exp(1j * rng.uniform(0, 2 * math.pi))),
        ("exterior", ext,
         lambda: 5.0 + rng.uniform(1.3, 8.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))),
    ]
    for name, spec, sampler in cases:
        t0 = time.time()
        sigmas = []
        for z, w0 in sample_pairs(spec, rng, args.pairs // 2, sampler):
            est, se = wos_green(spec, z, w0, cfg)
            want = closed_form_green(spec, z, w0)
            sigmas.append((est - want) / max(se, 1e-300))
        sigmas = np.array(sigmas)
        cover = float(np.mean(np.abs(sigmas) <= 3.0))
        print(f"{name:>9}: {len(sigmas)} pairs, |err|/stderr "
              f"median {np.median(np.abs(sigmas)):.2f}, max {np.abs(sigmas).max():.2f}, "
              f"3-sigma coverage {cover:.0%}, {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
