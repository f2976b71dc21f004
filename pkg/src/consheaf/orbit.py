"""Orbit-category Hom dimensions and the dual-numbers model at a point.

``K = k[e]/(e^2)`` with ``k = GF(2)``.  A finitely generated K-module is a
k-vector space with a square-zero matrix ``E``; a free module ``K^n`` uses the
basis ``(1, e)`` per generator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import hom_complex
from .errors import FieldMismatch, MalformedInput
from .intervals import GradedBarcode, GradedVectorSpace
from .linalg import GF2, kron


def orbit_hom_dim(F: GradedBarcode, G: GradedBarcode) -> int:
    """``sum_n dim Hom(F[-n], G)``."""
    if F.field != GF2 or G.field != GF2:
        raise FieldMismatch("orbit category computations are over GF(2)")
    return hom_complex(F, G).total


# ---------------------------------------------------------------- K-modules


@dataclass
class KModule:
    E: np.ndarray  # action of e

    @property
    def dim(self):
        return self.E.shape[0]

    def __post_init__(self):
        if not GF2.is_zero(GF2.mul(self.E, self.E)):
            raise MalformedInput("e^2 must act as zero")


def free_module(n) -> KModule:
    E = GF2.zeros(2 * n, 2 * n)
    for g in range(n):
        E[2 * g + 1, 2 * g] = 1
    return KModule(E)


TRIVIAL = KModule(GF2.zeros(1, 1))


def k_hom_basis(M: KModule, N: KModule):
    """Basis of ``Hom_K(M, N)`` as ``N.dim x M.dim`` matrices."""
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    # X E_M - E_N X = 0 on vec(X) (column-major)
    A = GF2.sub(kron(GF2, M.E.T.copy(), GF2.eye(n)), kron(GF2, GF2.eye(m), N.E))
    K = GF2.nullspace(A)
    return [K[:, c].reshape((n, m), order="F") for c in range(K.shape[1])]


def is_k_linear(X, M: KModule, N: KModule):
    return GF2.equal(GF2.mul(X, M.E), GF2.mul(N.E, X))


def _solve_k_linear(P: KModule, T: KModule, post, rhs):
    """Some K-linear ``X : P -> T`` with ``post @ X = rhs``, or ``None``."""
    basis = k_hom_basis(P, T)
    if not basis:
        return GF2.zeros(T.dim, P.dim) if GF2.is_zero(rhs) else None
    cols = [GF2.mul(post, X).reshape(-1, order="F") for X in basis]
    A = np.stack(cols, axis=1)
    b = rhs.reshape(-1, 1, order="F")
    c = GF2.solve(A, b)
    if c is None:
        return None
    X = GF2.zeros(T.dim, P.dim)
    for coef, B in zip(c[:, 0], basis):
        if coef:
            X = GF2.add(X, B)
    return X


def resolution_of_k(length):
    """``K <-e- K <-e- ... ``: modules and differentials ``d_j : P_j -> P_{j-1}``."""
    P = [free_module(1) for _ in range(length + 1)]
    e = free_module(1).E
    d = [None] + [e.copy() for _ in range(length)]
    aug = GF2.asarray([[1, 0]])  # K -> k
    return P, d, aug


def dualnumbers_ext(i: int) -> int:
    """``dim Ext^i_K(k, k)`` from the free resolution."""
    i = int(i)
    if i < 0:
        raise MalformedInput("i must be >= 0")
    P, d, _ = resolution_of_k(i + 1)
    homs = [k_hom_basis(Pj, TRIVIAL) for Pj in P]

    def delta(j):
        """``Hom(P_j, k) -> Hom(P_{j+1}, k)``, ``phi -> phi d_{j+1}``."""
        src, dst = homs[j], homs[j + 1]
        if not src or not dst:
            return GF2.zeros(len(dst), len(src))
        D = np.stack([B.reshape(-1) for B in dst], axis=1)
        cols = []
        for phi in src:
            v = GF2.mul(phi, d[j + 1]).reshape(-1, 1)
            cols.append(GF2.solve(D, v)[:, 0])
        return np.stack(cols, axis=1)

    out_rank = GF2.rank(delta(i))
    in_rank = GF2.rank(delta(i - 1)) if i > 0 else 0
    return len(homs[i]) - out_rank - in_rank


# ---------------------------------------------------------------- L^{p,q}


def lpq_complex(p, q):
    """``K -e-> K -e-> ... -e-> K`` in degrees ``p..q``: ``{deg: module}, {deg: d^deg}``."""
    if p > q:
        raise MalformedInput("need p <= q")
    mods = {k: free_module(1) for k in range(p, q + 1)}
    e = free_module(1).E
    diffs = {k: e.copy() for k in range(p, q)}
    return mods, diffs


def complex_cohomology(mods, diffs):
    dims = {}
    for k, M in mods.items():
        d_out = diffs.get(k)
        d_in = diffs.get(k - 1)
        r_out = GF2.rank(d_out) if d_out is not None else 0
        r_in = GF2.rank(d_in) if d_in is not None else 0
        dims[k] = M.dim - r_out - r_in
    return GradedVectorSpace(dims)


def lpq_triangle_check(p, q) -> bool:
    """Cohomology of ``L^{p,q}`` is ``k`` in degrees ``p`` and ``q``, and the
    connecting class ``k[-q] -> k[-p+1]`` is nonzero in ``Ext^{q-p+1}``.

    The class is read from the exact sequence
    ``0 -> k -> K -> ... -> K -> k -> 0`` (``q-p+1`` copies of ``K``): lifting
    the identity of ``k`` along the free resolution, the last component is a
    cocycle in ``Hom(P_{q-p+1}, k)``, whose coboundaries vanish, so it
    represents ``s^{q-p+1}`` exactly when it is nonzero.
    """
    p, q = int(p), int(q)
    mods, diffs = lpq_complex(p, q)
    for k, d in diffs.items():
        if not (is_k_linear(d, mods[k], mods[k + 1])):
            return False
    for k in range(p, q - 1):
        if not GF2.is_zero(GF2.mul(diffs[k + 1], diffs[k])):
            return False
    H = complex_cohomology(mods, diffs)
    expected = {p: 2} if p == q else {p: 1, q: 1}
    if H != GradedVectorSpace(expected):
        return False
    m = q - p + 1
    # E_0 = K (degree q) -> E_{-1} = k; E_j = K (degree q-j); E_m = k included as e.K
    aug = GF2.asarray([[1, 0]])
    incl = GF2.asarray([[0], [1]])  # k -> K, 1 -> e
    E_mods = [free_module(1) for _ in range(m)] + [TRIVIAL]
    e_maps = [aug] + [free_module(1).E.copy() for _ in range(m - 1)] + [incl]
    P, d, paug = resolution_of_k(m)
    phi_prev = GF2.eye(1)  # identity of k
    d_prev = paug
    phi = None
    for j in range(m + 1):
        rhs = GF2.mul(phi_prev, d_prev)
        phi = _solve_k_linear(P[j], E_mods[j], e_maps[j], rhs)
        if phi is None:
            return False
        phi_prev = phi
        d_prev = d[j + 1] if j + 1 < len(d) else None
        if d_prev is None and j < m:
            return False
    return not GF2.is_zero(phi)


# ---------------------------------------------------------------- stabilization


def dk_model_hom(F: GradedBarcode, G: GradedBarcode, n) -> int:
    """``dim Hom_{D(K)}(R(F)[-n], R(G)) = sum_{m <= n} dim Hom(F[-m], G)``."""
    hc = hom_complex(F, G)
    return sum(v for m, v in hc.dims.items() if m <= n)


def stabilization_bound_check(F: GradedBarcode, G: GradedBarcode, n=None) -> bool:
    """Hom in the K-model is constant (and equal to the orbit Hom) past ``b-a+2``.

    Both the K-model sums ``sum_{m<=n}`` and the forward partial sums
    ``sum_{0<=m<=n}`` are checked up to ``max(n, b-a+2) + 5``.
    """
    degs = set(F.degrees()) | set(G.degrees())
    if not degs:
        return True
    a, b = min(degs), max(degs)
    bound = b - a + 2
    top = max(bound, n if n is not None else bound) + 5
    total = orbit_hom_dim(F, G)
    hc = hom_complex(F, G)
    fwd = [sum(v for m, v in hc.dims.items() if 0 <= m <= k) for k in range(bound + 1, top + 1)]
    model = [dk_model_hom(F, G, k) for k in range(bound + 1, top + 1)]
    return len(set(fwd)) == 1 and len(set(model)) == 1 and model[0] == total


def point_orbit_hom_two_ways(V: dict, W: dict):
    """Orbit Hom between graded vector spaces, by the sum over shifts and
    through ``Ext_K`` at a large enough shift."""
    V = GradedVectorSpace(V)
    W = GradedVectorSpace(W)
    direct = V.total * W.total
    degs = list(V.dims) + list(W.dims)
    if not degs:
        return 0, 0
    n0 = max(degs) - min(degs) + 2
    via_k = 0
    for i, vi in V.dims.items():
        for j, wj in W.dims.items():
            via_k += vi * wj * dualnumbers_ext(n0 + i - j)
    return direct, via_k
