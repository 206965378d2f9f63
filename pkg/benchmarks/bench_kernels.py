"""Time the numba kernels against their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each kernel
is called once first so JIT compilation is excluded from the timings, and
the two results are compared before timing.
"""
import argparse
import timeit

import numpy as np

from hardykernels import _kernels


def cases(rng):
    z = np.exp(2j * np.pi * np.arange(4096) / 4096)
    coeffs = rng.normal(size=24) + 1j * rng.normal(size=24)
    yield "horner (deg 23, 4096 pts)", "horner", (coeffs, z)

    zeros = 0.8 * np.sqrt(rng.uniform(size=12)) * np.exp(2j * np.pi * rng.uniform(size=12))
    yield "blaschke (12 zeros, 4096 pts)", "blaschke_eval", (zeros, 1.0 + 0j, z)

    for n, K in ((1, 256), (2, 256), (3, 128)):
        c = rng.normal(size=(4096, n, n)) + 1j * rng.normal(size=(4096, n, n))
        yield f"toeplitz fill (n={n}, K={K})", "toeplitz_fill", (c, 2 * K, K)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _kernels.HAS_NUMBA:
        print("numba is not installed; only the numpy fallback is available")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for label, name, call_args in cases(rng):
        slow = getattr(_kernels, f"{name}_numpy")
        fast = getattr(_kernels, f"{name}_numba")
        a, b = slow(*call_args), fast(*call_args)
        if not np.allclose(a, b, rtol=1e-12, atol=1e-12):
            raise SystemExit(f"{label}: numba and numpy results differ")
        t_np = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        print(f"{label:32s} {1e3 * t_np:10.3f} {1e3 * t_nb:10.3f} {t_np / t_nb:8.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
