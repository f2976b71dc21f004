"""Hot kernels for modular row reduction.

Numba-compiled versions are used when numba imports and the environment
variable ``CONSHEAF_DISABLE_NUMBA`` is unset (or ``0``).  The pure numpy
versions below compute bit-identical results and serve as the fallback.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("CONSHEAF_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")

try:  # pragma: no cover - depends on environment
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def _inv_mod(a, p):
    return pow(int(a), p - 2, p)


def rref_mod_p_numpy(A: np.ndarray, p: int):
    """Reduced row echelon form of ``A`` over GF(p), numpy version.

    Returns ``(R, pivots)``; ``A`` is not modified.
    """
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = _inv_mod(R[r, c], p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


@njit(cache=True)
def _powmod(a, e, p):
    result = 1
    a = a % p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


@njit(cache=True)
def _rref_mod_p_kernel(R, p):
    m, n = R.shape
    pivots = np.empty(min(m, n), np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if R[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                t = R[r, j]
                R[r, j] = R[piv, j]
                R[piv, j] = t
        inv = _powmod(R[r, c], p - 2, p)
        for j in range(n):
            R[r, j] = (R[r, j] * inv) % p
        for i in range(m):
            if i != r:
                f = R[i, c]
                if f != 0:
                    for j in range(n):
                        R[i, j] = (R[i, j] - f * R[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


def rref_mod_p_numba(A: np.ndarray, p: int):
    R = np.ascontiguousarray(np.array(A, dtype=np.int64) % p)
    if R.size == 0:
        return R, np.zeros(0, dtype=np.int64)
    pivots = _rref_mod_p_kernel(R, np.int64(p))
    return R, pivots


def rref_mod_p(A: np.ndarray, p: int):
    if HAVE_NUMBA:
        return rref_mod_p_numba(A, p)
    return rref_mod_p_numpy(A, p)
