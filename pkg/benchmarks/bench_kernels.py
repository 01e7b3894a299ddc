"""Time each dense kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--sizes 12 13 14 15 16] [--repeat 5]

Prints one row per (kernel, n) with the best-of-repeat time for each backend
and the numpy/numba ratio. The first numba call per kernel is a warm-up so
compilation is not timed.
"""

import argparse
import time

import numpy as np

from intervalstruct import _kernels as K


def cases(n, rng):
    size = 1 << n
    gam = rng.integers(1, size, size=48)
    focal = np.zeros(size, dtype=np.int64)
    for k, g in enumerate(gam):
        focal[g] |= 1 << k
    lower = K.or_over_submasks(focal, n)
    masses = np.zeros(size)
    masses[rng.choice(np.arange(1, size), size=32, replace=False)] = rng.dirichlet(np.ones(32))
    bel = K.zeta_sum(masses, n)
    p = rng.dirichlet(np.ones(48))
    return {
        "or_over_submasks": lambda: K.or_over_submasks(focal, n),
        "strip_below": lambda: K.strip_below(lower, n),
        "zeta_sum": lambda: K.zeta_sum(masses, n),
        "moebius": lambda: K.moebius(bel, n),
        "inverse_images": lambda: K.inverse_images(list(gam), n),
        "measure": lambda: K.measure(lower, p),
    }


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[12, 13, 14, 15, 16])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba not installed; only the numpy backend is available")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}{'n':>3}{'numba ms':>11}{'numpy ms':>11}{'ratio':>8}")
    for n in args.sizes:
        for name, fn in cases(n, rng).items():
            row = {}
            for backend in K.BACKENDS:
                with K.use_backend(backend):
                    fn()
                    row[backend] = best(fn, args.repeat)
            ratio = row["numpy"] / row["numba"] if row["numba"] else float("nan")
            print(f"{name:<18}{n:>3}{row['numba'] * 1e3:>11.3f}{row['numpy'] * 1e3:>11.3f}{ratio:>8.2f}")


if __name__ == "__main__":
    main()
