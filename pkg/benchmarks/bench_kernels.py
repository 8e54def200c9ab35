"""Time the numba and numpy versions of the batched SU(2) kernels.

    python benchmarks/bench_kernels.py --sizes 1000,100000 --repeat 5
"""
import argparse
import time

import numpy as np

from plgroups import _kernels as K

KERNELS = ["es_su2", "es_dual_su2", "delin_identity"]


def best_of(fn, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000,1000000")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not K.HAVE_NUMBA:
        print("numba unavailable (or PLGROUPS_DISABLE_NUMBA set); timing numpy only")
    rng = np.random.default_rng(args.seed)
    print("%-16s %10s %12s %12s %8s" % ("kernel", "N", "numpy [s]", "numba [s]", "speedup"))
    for N in (int(x) for x in args.sizes.split(",")):
        lam = rng.standard_normal((N, 3)) * rng.uniform(0.1, 5, (N, 1))
        s = rng.uniform(0.05, 2, N)
        for name in KERNELS:
            t_np = best_of(getattr(K, name + "_numpy"), (lam, s), args.repeat)
            if K.HAVE_NUMBA:
                fn = getattr(K, name + "_numba")
                fn(lam[:2], s[:2])          # compile outside the timing
                t_nb = best_of(fn, (lam, s), args.repeat)
                print("%-16s %10d %12.5f %12.5f %8.1f" % (name, N, t_np, t_nb, t_np / t_nb))
            else:
                print("%-16s %10d %12.5f %12s %8s" % (name, N, t_np, "-", "-"))


if __name__ == "__main__":
    main()
