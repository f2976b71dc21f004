"""Closed-form Hom/Ext/tensor/duality/sections for barcodes, with zigzag oracles."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import FieldMismatch, MalformedInput
from .intervals import INF, NINF, GradedBarcode, GradedVectorSpace, Interval, is_finite
from .linalg import Field, kron
from .quiver import QuiverRep, hom_ext_dims
from .zigzag import ZigzagRep, gabriel_decompose, realize_rep, vertex_range, zigzag_arrows


# ---------------------------------------------------------------- closed forms

def hom_dim(I: Interval, J: Interval) -> int:
    """1 iff I n J is nonempty, closed in I and open in J."""
    K = I.intersect(J)
    if K is None:
        return 0
    closed_left = (K.a == I.a and K.a_closed == I.a_closed) or K.a_closed
    closed_right = (K.b == I.b and K.b_closed == I.b_closed) or K.b_closed
    open_left = (K.a == J.a and K.a_closed == J.a_closed) or not K.a_closed
    open_right = (K.b == J.b and K.b_closed == J.b_closed) or not K.b_closed
    return int(closed_left and closed_right and open_left and open_right)


def _euler_form(I: Interval, J: Interval) -> int:
    """sum_v dI_v dJ_v - sum_arrows dI_s dJ_t on a common refinement."""
    pts = sorted(set(I.endpoints()) | set(J.endpoints()))
    i0, i1 = vertex_range(I, pts)
    j0, j1 = vertex_range(J, pts)
    verts = max(0, min(i1, j1) - max(i0, j0) + 1)
    arrows = sum(1 for s, t in zigzag_arrows(len(pts)) if i0 <= s <= i1 and j0 <= t <= j1)
    return verts - arrows


def ext1_dim(I: Interval, J: Interval) -> int:
    return hom_dim(I, J) - _euler_form(I, J)


def _check_fields(F, G):
    if F.field != G.field:
        raise FieldMismatch(f"{F.field} vs {G.field}")


def hom_complex(F: GradedBarcode, G: GradedBarcode) -> GradedVectorSpace:
    """Graded dims of ``Hom(F, G[k])``."""
    _check_fields(F, G)
    out = {}
    for I, dI, mI in F:
        for J, dJ, mJ in G:
            h = hom_dim(I, J)
            e = ext1_dim(I, J)
            if h:
                out[dJ - dI] = out.get(dJ - dI, 0) + mI * mJ * h
            if e:
                out[dJ - dI + 1] = out.get(dJ - dI + 1, 0) + mI * mJ * e
    return GradedVectorSpace(out)


def tensor(F: GradedBarcode, G: GradedBarcode) -> GradedBarcode:
    _check_fields(F, G)
    bars = []
    for I, dI, mI in F:
        for J, dJ, mJ in G:
            K = I.intersect(J)
            if K is not None:
                bars.append((K, dI + dJ, mI * mJ))
    return GradedBarcode(bars, F.field)


def dual_bar(I: Interval, d: int):
    """``D'(k_I[-d])`` as ``(interval, degree)``."""
    if I.is_singleton:
        # D'(k_{x}) = k_{x}[-1]
        return I, 1 - d
    J = Interval(I.a, is_finite(I.a) and not I.a_closed, I.b, is_finite(I.b) and not I.b_closed)
    return J, -d


def dual_prime(F: GradedBarcode) -> GradedBarcode:
    return GradedBarcode([(*dual_bar(I, d), m) for I, d, m in F], F.field)


def _missing_ends(I: Interval, compact: bool) -> int:
    miss = 0
    for x, closed in ((I.a, I.a_closed), (I.b, I.b_closed)):
        if is_finite(x):
            miss += not closed
        else:
            miss += compact
    return miss


def bar_sections(I: Interval, compact_support: bool) -> GradedVectorSpace:
    m = _missing_ends(I, compact_support)
    return GradedVectorSpace({0: 1} if m == 0 else ({1: 1} if m == 2 else {}))


def sections(F: GradedBarcode, compact_support: bool = False) -> GradedVectorSpace:
    """``RGamma(R; F)`` or ``RGamma_c(R; F)``."""
    out = GradedVectorSpace()
    for I, d, m in F:
        out = out + bar_sections(I, compact_support).shift(-d).scale(m)
    return out


def extension_class_count(ext_dim: int, q: int) -> int:
    """Orbits of ``k^e`` under ``x -> lambda mu^{-1} x`` for ``|k| = q``."""
    ext_dim, q = int(ext_dim), int(q)
    if ext_dim < 0:
        raise MalformedInput("ext_dim must be >= 0")
    if q < 2 or not _is_prime_power(q):
        raise MalformedInput(f"{q} is not a prime power")
    return 1 + (q**ext_dim - 1) // (q - 1)


def _is_prime_power(q):
    for p in range(2, int(q**0.5) + 2):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return True


# ---------------------------------------------------------------- oracles

def barcode_points(*bcs):
    pts = set()
    for bc in bcs:
        pts.update(bc.endpoints())
    return sorted(pts)


def realize_degrees(F: GradedBarcode, points):
    """``{degree: ZigzagRep}`` for a split complex."""
    out = {}
    for d in F.degrees():
        out[d] = realize_rep(F.in_degree(d).shift(d), points)
    return out


def oracle_hom_complex(F: GradedBarcode, G: GradedBarcode) -> GradedVectorSpace:
    """Quiver-category Hom/Ext between the realized degree pieces."""
    _check_fields(F, G)
    pts = barcode_points(F, G)
    RF = realize_degrees(F, pts)
    RG = realize_degrees(G, pts)
    out = {}
    for dI, M in RF.items():
        for dJ, N in RG.items():
            h, e = hom_ext_dims(M, N)
            out[dJ - dI] = out.get(dJ - dI, 0) + h
            out[dJ - dI + 1] = out.get(dJ - dI + 1, 0) + e
    return GradedVectorSpace(out)


def oracle_hom_ext(I: Interval, J: Interval, field):
    pts = sorted(set(I.endpoints()) | set(J.endpoints()))
    M = realize_rep(GradedBarcode([(I, 0)], field), pts)
    N = realize_rep(GradedBarcode([(J, 0)], field), pts)
    return hom_ext_dims(M, N)


def tensor_rep(M: ZigzagRep, N: ZigzagRep) -> ZigzagRep:
    F = M.field
    dims = [a * b for a, b in zip(M.dims, N.dims)]
    mats = [kron(F, A, B) for A, B in zip(M.mats, N.mats)]
    return ZigzagRep(F, M.points, dims, mats=mats)


def oracle_tensor(F: GradedBarcode, G: GradedBarcode) -> GradedBarcode:
    pts = barcode_points(F, G)
    RF, RG = realize_degrees(F, pts), realize_degrees(G, pts)
    out = GradedBarcode([], F.field)
    for d, M in RF.items():
        for e, N in RG.items():
            out = out + gabriel_decompose(tensor_rep(M, N)).shift(-(d + e))
    return out


def _cells_complex(rep: ZigzagRep):
    """Cellular cochains computing RGamma_c: stalks -> all open cells."""
    F = rep.field
    n = rep.n
    rows = [rep.dims[2 * k] for k in range(n + 1)]
    cols = [rep.dims[2 * k + 1] for k in range(n)]
    D = F.zeros(sum(rows), sum(cols))
    ro = np.cumsum([0] + rows)
    co = np.cumsum([0] + cols)
    for k in range(n):
        L, R = rep.maps[k]
        # point k sits at the right end of cell k and the left end of cell k+1
        D[ro[k]:ro[k + 1], co[k]:co[k + 1]] = L
        D[ro[k + 1]:ro[k + 2], co[k]:co[k + 1]] = F.neg(R)
    return D, sum(cols), sum(rows)


def _cech_complex(rep: ZigzagRep):
    """Cech cochains for the cover by stars of the points."""
    F = rep.field
    n = rep.n
    cols = [rep.dims[2 * k + 1] for k in range(n)]
    rows = [rep.dims[2 * k] for k in range(1, n)]
    D = F.zeros(sum(rows), sum(cols))
    ro = np.cumsum([0] + rows)
    co = np.cumsum([0] + cols)
    for k in range(n - 1):
        # overlap of stars k and k+1 is cell 2k+2
        D[ro[k]:ro[k + 1], co[k]:co[k + 1]] = rep.maps[k][1]
        D[ro[k]:ro[k + 1], co[k + 1]:co[k + 2]] = F.neg(rep.maps[k + 1][0])
    return D, sum(cols), sum(rows)


def oracle_rep_sections(rep: ZigzagRep, compact_support: bool) -> GradedVectorSpace:
    F = rep.field
    if rep.n == 0:
        return GradedVectorSpace({1 if compact_support else 0: rep.dims[0]})
    D, c0, c1 = _cells_complex(rep) if compact_support else _cech_complex(rep)
    r = F.rank(D) if D.size else 0
    return GradedVectorSpace({0: c0 - r, 1: c1 - r})


def oracle_sections(F: GradedBarcode, compact_support: bool = False) -> GradedVectorSpace:
    pts = barcode_points(F) or [Fraction(0)]
    out = GradedVectorSpace()
    for d, rep in realize_degrees(F, pts).items():
        out = out + oracle_rep_sections(rep, compact_support).shift(-d)
    return out


def oracle_dual_rep(rep: ZigzagRep):
    """``D'`` of a degree-0 rep: ``(degree-0 rep, {point index: dim})``.

    Stalk of ``D'F`` at ``x`` is ``RGamma_c(star(x); F)^*[-1]``, with
    ``RGamma_c(star) = [V_x -> V_l + V_r]``; cells give ``V_c^*`` in degree 0.
    """
    F = rep.field
    dims = list(rep.dims)
    mats = list(rep.mats)
    deg1 = {}
    new_mats = [None] * len(mats)
    for k in range(rep.n):
        L, R = rep.maps[k]
        dl, dp, dr = dims[2 * k], dims[2 * k + 1], dims[2 * k + 2]
        d = np.concatenate([L, F.neg(R)], axis=0) if dl + dr else F.zeros(0, dp)
        r = F.rank(d) if d.size else 0
        deg1[k] = dp - r
        # coker(d)^* = {phi on V_l + V_r : phi d = 0}; restriction = dual of inclusion
        Ann = F.nullspace(d.T.copy()) if dl + dr else F.zeros(0, 0)  # columns: functionals
        dims[2 * k + 1] = Ann.shape[1]
        # cell map: (D'F)_x -> V_l^* sends phi to phi|_{V_l}; in coordinates rows of Ann
        new_mats[2 * k] = Ann[:dl, :].copy()
        new_mats[2 * k + 1] = Ann[dl:, :].copy()
    return ZigzagRep(F, rep.points, dims, mats=new_mats), deg1


def oracle_dual(F: GradedBarcode) -> GradedBarcode:
    pts = barcode_points(F) or [Fraction(0)]
    out = GradedBarcode([], F.field)
    for d, rep in realize_degrees(F, pts).items():
        r0, deg1 = oracle_dual_rep(rep)
        part = gabriel_decompose(r0)
        sk = [(Interval.point(pts[k]), 1, m) for k, m in deg1.items() if m]
        part = part + GradedBarcode(sk, F.field)
        out = out + part.shift(d)
    return out


# ---------------------------------------------------------------- random data

def random_interval(rng, grid=8, allow_infinite=True, allow_singleton=True) -> Interval:
    while True:
        a, b = sorted(int(x) for x in rng.integers(0, grid, size=2))
        ac, bc = bool(rng.integers(2)), bool(rng.integers(2))
        A = Fraction(a)
        B = Fraction(b)
        if allow_infinite and rng.random() < 0.15:
            A, ac = NINF, False
        if allow_infinite and rng.random() < 0.15:
            B, bc = INF, False
        if not allow_singleton and A == B:
            continue
        I = Interval.make(A, ac, B, bc)
        if I is not None:
            return I


def random_barcode(rng, field, max_bars=4, degrees=(0,), grid=8, **kw) -> GradedBarcode:
    k = int(rng.integers(0, max_bars + 1))
    bars = [(random_interval(rng, grid, **kw), int(rng.choice(degrees)), int(rng.integers(1, 3))) for _ in range(k)]
    return GradedBarcode(bars, field)
