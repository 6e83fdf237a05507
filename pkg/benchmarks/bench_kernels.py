"""Compare the numba and pure-numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Both paths are imported directly, so CNFTRACK_NUMBA does not matter here.
The first numba call (compilation, or loading the on-disk cache) is timed
separately.
"""

import argparse
import math
import timeit

import numpy as np

from cnftrack import _kernels as k


def cases():
    y0 = np.array([1.0, 0.0, 0.0, -0.5])
    lam = 2.0
    period = 2 * lam * math.pi / (math.sqrt(lam * lam - 1) * (lam + 1))
    n = int(math.ceil(period / 1e-4))
    t = np.linspace(0.0, 2 * math.pi, 200_001)
    x, y = 3 * np.cos(t) + 0.01 * t, 3 * np.sin(t)
    return {
        f"rk4 one period, {n} steps": (
            lambda: k.rk4_numpy(y0, lam, period / n, n),
            lambda: k.rk4_numba(y0, lam, period / n, n),
        ),
        f"three-point curvature, {len(x)} points": (
            lambda: k.three_point_numpy(x, y),
            lambda: k.three_point_numba(x, y),
        ),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not k.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed")

    print(f"{'kernel':40s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for name, (slow, fast) in cases().items():
        first = timeit.timeit(fast, number=1)
        t_np = min(timeit.repeat(slow, number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(fast, number=1, repeat=args.repeat))
        a, b = slow(), fast()
        same = all(np.allclose(u, v, atol=1e-12, equal_nan=True) for u, v in zip(a, b) if isinstance(u, np.ndarray))
        print(f"{name:40s} {1e3 * t_np:12.2f} {1e3 * t_nb:12.2f} {t_np / t_nb:8.1f}x"
              f"  (first call {1e3 * first:.0f} ms{'' if same else ', OUTPUTS DIFFER'})")


if __name__ == "__main__":
    main()
