"""Integer kernel for divisor enumeration.

The JIT can be switched off with HFL_JIT=0, which runs the same function in
the interpreter (handy for debugging and for machines without numba).
"""
import os

import numpy as np

JIT_ENABLED = os.environ.get("HFL_JIT", "1") != "0"

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        JIT_ENABLED = False

if not JIT_ENABLED:
    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f
        return wrapper

# columns after the n divisor coefficients
DEG, DIM, R1, R2, N0, REAL_EXP = range(6)
NCOLS = 6


@njit(cache=False)
def strata_table(mults, genus):
    """One row per Higgs divisor, lexicographic in D.

    Row layout: D_1..D_n, deg, dim, r1, r2, n0, real-point exponent.
    """
    n = mults.shape[0]
    caps = np.empty(n, dtype=np.int64)
    total = 1
    n_odd = 0
    for i in range(n):
        caps[i] = mults[i] // 2
        total *= caps[i] + 1
        if mults[i] % 2 == 1:
            n_odd += 1
    out = np.zeros((total, n + NCOLS), dtype=np.int64)
    D = np.zeros(n, dtype=np.int64)
    for row in range(total):
        deg = 0
        r1 = 0
        r2 = 0
        n0 = 0
        for i in range(n):
            m = mults[i]
            di = D[i]
            out[row, i] = di
            deg += di
            if m % 2 == 1:
                r2 += (m - 2 * di - 1) // 2
            elif 2 * di < m:
                r1 += 1
                r2 += m // 2 - di - 1
            else:
                n0 += 1
        out[row, n + DEG] = deg
        out[row, n + DIM] = 3 * genus - 3 - deg
        out[row, n + R1] = r1
        out[row, n + R2] = r2
        out[row, n + N0] = n0
        out[row, n + REAL_EXP] = 2 * genus - 2 + n - n0
        # mixed-radix increment, last coefficient fastest
        j = n - 1
        while j >= 0:
            D[j] += 1
            if D[j] <= caps[j]:
                break
            D[j] = 0
            j -= 1
    return out
