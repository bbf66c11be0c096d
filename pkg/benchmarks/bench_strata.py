"""Divisor-enumeration kernel: numba vs the interpreted fallback.

    python3 benchmarks/bench_strata.py
"""
import time

import numpy as np

from hfl import _kernels
from hfl.strata import all_profiles


def bench(fn, profiles, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for m, g in profiles:
            fn(m, g)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    profiles = [(np.asarray(p.mults, dtype=np.int64), p.genus) for p in all_profiles(6)]
    big = [(np.asarray((4,) * 10, dtype=np.int64), 11), (np.asarray((6,) * 8, dtype=np.int64), 13)]
    jit = _kernels.strata_table
    py = getattr(jit, "py_func", jit)
    jit(*profiles[0])  # compile outside the timing
    for label, ps in (("all profiles g<=6", profiles), ("large profiles", big)):
        rows = sum(py(m, g).shape[0] for m, g in ps)
        tj, tp = bench(jit, ps), bench(py, ps)
        print(f"{label:<20} rows={rows:>8}  jit={tj:.4f}s  python={tp:.4f}s  speedup={tp / tj:.1f}x")
    print(f"JIT enabled: {_kernels.JIT_ENABLED}")


if __name__ == "__main__":
    main()
