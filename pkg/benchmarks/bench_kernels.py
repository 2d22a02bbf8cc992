"""Compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 1000 100000] [--repeat 5]

Times each scan kernel on random input for both backends, checks they agree,
then times a full trimmed-distance computation with each backend swapped in.
"""

import argparse
import timeit
from contextlib import contextmanager

import numpy as np

from trimdist import _kernels, _pykernels
from trimdist.core import TrimParams, empirical_cdf, normal
from trimdist.trimming import trimmed_distance

try:
    from trimdist import _ckernels
except ImportError:
    _ckernels = None

KERNELS = ("prefix_min", "suffix_max", "constrained_pair_max", "reachable")


def inputs(rng, n):
    left = np.cumsum(rng.normal(size=n))
    right = left + rng.normal(scale=0.1, size=n)
    lower = np.sort(rng.uniform(0, 1, n)) - 0.05
    upper = lower + 0.1
    upper[0] = lower[0] = 0.0
    return {
        "prefix_min": (left, right),
        "suffix_max": (left, right),
        "constrained_pair_max": (left, float(np.quantile(left, 0.2)), float(np.quantile(left, 0.8))),
        "reachable": (lower, upper, 2.0 / n, 1e-13),
    }


def best_of(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05 and number < 1000:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


@contextmanager
def backend(module):
    saved = {k: getattr(_kernels, k) for k in KERNELS}
    try:
        for k in KERNELS:
            setattr(_kernels, k, getattr(module, k))
        yield
    finally:
        for k, v in saved.items():
            setattr(_kernels, k, v)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the fallback is available")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'n':>10}{'cython [s]':>14}{'python [s]':>14}{'speedup':>10}")
    for n in args.sizes:
        data = inputs(rng, n)
        for name in KERNELS:
            fc, fp = getattr(_ckernels, name), getattr(_pykernels, name)
            assert same(fc(*data[name]), fp(*data[name])), f"{name} disagrees at n={n}"
            tc = best_of(fc, data[name], args.repeat)
            tp = best_of(fp, data[name], args.repeat)
            print(f"{name:<22}{n:>10}{tc:>14.2e}{tp:>14.2e}{tp / tc:>10.1f}")

    print()
    print(f"{'end to end':<32}{'cython [s]':>14}{'python [s]':>14}{'speedup':>10}")
    sample = empirical_cdf(rng.normal(1, 1, 10_000))
    cases = {
        "empirical n=1e4, alpha=0.1": (normal(), sample, TrimParams(0.1), 100_000),
        "normal grid 1e5, alpha=0.1": (normal(), normal(1, 1), TrimParams(0.1), 100_000),
    }
    for label, case in cases.items():
        with backend(_ckernels):
            dc = trimmed_distance(*case).distance
            tc = best_of(trimmed_distance, case, args.repeat)
        with backend(_pykernels):
            dp = trimmed_distance(*case).distance
            tp = best_of(trimmed_distance, case, args.repeat)
        assert dc == dp
        print(f"{label:<32}{tc:>14.2e}{tp:>14.2e}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
