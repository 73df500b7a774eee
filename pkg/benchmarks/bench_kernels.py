"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported side by side, so COVSYS_KERNELS does not matter
here. Times are the best of ``--repeat`` runs, after one warm-up call.
"""

import argparse
import time

import numpy as np

from covsys import _kernels
from covsys.constructions import erdos_cover
from covsys.cyclotomic import _reduction_data


def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def workloads():
    s = erdos_cover(15, cap=None)  # N = 2^14 * 15 = 245760
    res = np.array(s.residues, dtype=np.int64)
    mods = np.array(s.moduli, dtype=np.int64)
    lam = np.array(s.lam, dtype=np.int64)
    N = s.lcm
    values = _kernels.numpy_impl.fill_profile(res, mods, lam, N)
    _, _, poly, nz = _reduction_data(1155)
    rng = np.random.default_rng(0)
    vec = rng.integers(-1000, 1000, size=2 * 1155, dtype=np.int64)
    return {
        f"fill_profile (k={s.k}, N={N})": lambda impl: impl.fill_profile(res, mods, lam, N),
        f"spread_gcd (N={N})": lambda impl: impl.spread_gcd(values),
        f"has_period p=N/2 (N={N})": lambda impl: impl.has_period(values, N // 2, 0),
        "reduce_monic (d=1155, len 2310)": lambda impl: impl.reduce_monic(vec, poly, nz),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = [b for b in (_kernels.numba_impl, _kernels.numpy_impl) if b is not None]
    if _kernels.numba_impl is None:
        print("numba is not installed; timing the numpy backend only")
    print(f"{'kernel':<40}" + "".join(f"{b.name:>12}" for b in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for label, work in workloads().items():
        times = [best_of(lambda: work(b), args.repeat) for b in backends]
        row = f"{label:<40}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
