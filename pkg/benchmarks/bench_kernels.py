"""Compare the compiled and numpy implementations of the duality-map kernels.

Usage: python3 benchmarks/bench_kernels.py [--sizes 8 64 1024 65536] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from vrkbs import _pykernels

try:
    from vrkbs import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(n, rng):
    x = rng.standard_normal(n)
    w = rng.uniform(0.5, 2.0, n)
    k = max(1, n // 8)
    offsets = np.linspace(0, n, k + 1).astype(np.int64)
    inner = rng.choice([1.5, 2.0, 3.0], k)
    return {
        "lp_norm": lambda m: m.lp_norm(x, w, 3.0),
        "lp_dual": lambda m: m.lp_dual(x, w, 3.0),
        "block_norm": lambda m: m.block_norm(x, w, offsets, inner, 2.5),
        "block_dual": lambda m: m.block_dual(x, w, offsets, inner, 2.5),
    }


def best_time(fn, repeat):
    t = timeit.Timer(fn)
    number, _ = t.autorange()
    return min(t.repeat(repeat, number)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 64, 1024, 65536])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if _ckernels is None:
        print("compiled extension not built; timing the numpy path only")
    print(f"{'kernel':<12}{'n':>8}{'numpy [us]':>14}{'cython [us]':>14}{'speedup':>10}")
    for n in args.sizes:
        for name, call in cases(n, rng).items():
            tp = best_time(lambda: call(_pykernels), args.repeat) * 1e6
            if _ckernels is None:
                print(f"{name:<12}{n:>8}{tp:>14.2f}{'-':>14}{'-':>10}")
                continue
            tc = best_time(lambda: call(_ckernels), args.repeat) * 1e6
            print(f"{name:<12}{n:>8}{tp:>14.2f}{tc:>14.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
