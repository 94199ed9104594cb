#!/usr/bin/env python3
"""Quick look at the two scaling laws behind the no-go result.

Prints, for a ladder of lattice sizes, the minimum spectral gap of the
uniform-coupling string chain (expected ~ delta / N^2) and the engineered
transfer time (expected ~ N / delta), with fitted exponents.

Usage: python scripts/scaling_study.py [delta] [N_max]
"""

import sys

import numpy as np

from memstress import (
    christandl_couplings,
    eigh_tridiag,
    measure_transfer_time,
    min_gap,
    toric_effective,
)


def main() -> int:
    delta = float(sys.argv[1]) if len(sys.argv) > 1 else 0.1
    n_max = int(sys.argv[2]) if len(sys.argv) > 2 else 256
    ns, gaps, times = [], [], []
    n = 16
    print(f"{'N':>5s} {'min_gap':>12s} {'transfer_t':>12s}")
    while n <= n_max:
        uniform = toric_effective(n, 1.0, delta, np.full(n - 2, 0.5), np.zeros(n - 1))
        gap = min_gap(eigh_tridiag(uniform))
        chain = toric_effective(n, 1.0, delta, christandl_couplings(n), np.zeros(n - 1))
        res = measure_transfer_time(
            eigh_tridiag(chain), 0.999, 1.5 * np.pi * (n - 1) / (4 * delta)
        )
        print(f"{n:5d} {gap:12.4e} {res.transfer_time:12.4e}")
        ns.append(n)
        gaps.append(gap)
        times.append(res.transfer_time)
        n *= 2
    if len(ns) >= 3:
        g = np.polyfit(np.log(ns), np.log(gaps), 1)[0]
        t = np.polyfit(np.log(ns), np.log(times), 1)[0]
        print(f"\nfitted exponents: min_gap ~ N^{g:.3f}, transfer time ~ N^{t:.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
