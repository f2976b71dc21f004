"""Row reduction mod p: numba kernel against the numpy fallback.

    python3 benchmarks/bench_rref.py [--sizes 32 64 128] [--p 2 3 1000003]
"""
import argparse
import time

import numpy as np

from consheaf import _accel


def timeit(fn, A, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(A.copy(), p)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 1_000_003])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"backend: {_accel.backend()}")
    if _accel.HAVE_NUMBA:
        _accel.rref_mod_p_numba(np.eye(2, dtype=np.int64), 2)  # compile outside the timings
    print(f"{'p':>8} {'n':>5} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for p in args.p:
        for n in args.sizes:
            A = rng.integers(0, p, size=(n, n), dtype=np.int64)
            R1, piv1 = _accel.rref_mod_p_numpy(A.copy(), p)
            t_np = timeit(_accel.rref_mod_p_numpy, A, p, args.repeat)
            if _accel.HAVE_NUMBA:
                R2, piv2 = _accel.rref_mod_p_numba(A.copy(), p)
                assert np.array_equal(R1, R2) and list(piv1) == list(piv2)
                t_nb = timeit(_accel.rref_mod_p_numba, A, p, args.repeat)
                print(f"{p:>8} {n:>5} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}")
            else:
                print(f"{p:>8} {n:>5} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
