"""Constructible sheaves on the circle ``R / C Z``.

A :class:`CyclicRep` is the zigzag model closed up into a cycle.  Its lift to
the line is a periodic zigzag; bounded bars of the lift are the circle bars
``e_! k_I`` and the bars running through the whole window come from the
locally constant part.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .calculus import bar_sections, hom_complex
from .errors import FieldMismatch, MalformedInput, RefinementError
from .intervals import GradedBarcode, GradedVectorSpace, Interval
from .linalg import block_sizes, make_field
from .polys import invariant_factors, rational_canonical_form
from .quiver import QuiverRep, compose, direct_sum, hom_basis, hom_ext_dims, subrep
from .zigzag import multiplicities_from_ranks, rank_sweep


def cyclic_arrows(n):
    V = 2 * n
    out = []
    for k in range(n):
        out.append((2 * k + 1, 2 * k))
        out.append((2 * k + 1, (2 * k + 2) % V))
    return out


class CyclicRep(QuiverRep):
    """Vertex ``2k+1`` is the stalk at ``theta_k``; vertex ``2k`` the arc ending at it."""

    def __init__(self, field, circumference, points, dims, mats):
        field = make_field(field)
        C = Fraction(circumference)
        if C <= 0:
            raise MalformedInput("circumference must be positive")
        pts = [Fraction(p) for p in points]
        if not pts:
            raise MalformedInput("need at least one point")
        if any(b <= a for a, b in zip(pts, pts[1:])) or pts[0] < 0 or pts[-1] >= C:
            raise MalformedInput("points must increase inside [0, C)")
        if len(dims) != 2 * len(pts):
            raise MalformedInput(f"expected {2 * len(pts)} dims")
        self.C = C
        self.points = pts
        super().__init__(field, list(dims), cyclic_arrows(len(pts)), list(mats))

    @property
    def n(self):
        return len(self.points)

    @classmethod
    def from_quiver(cls, rep, C, points):
        return cls(rep.field, C, points, rep.dims, rep.mats)

    def lifted_point(self, p):
        n = self.n
        return self.points[p % n] + (p // n) * self.C

    def to_json(self):
        F = self.field
        return {
            "field": F.to_json(),
            "circumference": str(self.C),
            "points": [str(p) for p in self.points],
            "dims": list(self.dims),
            "maps": [[[F.elem_str(x) for x in row] for row in M] for M in self.mats],
        }


# ---------------------------------------------------------------- lifts


def lift_steps(rep: CyclicRep, g0, g1):
    """Path-quiver steps of the lift on global vertices ``g0..g1``."""
    V = 2 * rep.n
    steps = []
    for g in range(g0, g1):
        v = g % V
        if v % 2 == 1:
            k = (v - 1) // 2
            steps.append((1, rep.mats[2 * k + 1]))  # stalk -> right arc
        else:
            k = ((g + 1) % V - 1) // 2
            steps.append((-1, rep.mats[2 * k]))  # stalk (g+1) -> left arc g
    return steps


def lift_rep(rep: CyclicRep, g0, g1) -> QuiverRep:
    V = 2 * rep.n
    dims = [rep.dims[g % V] for g in range(g0, g1 + 1)]
    arrows, mats = [], []
    for idx, (d, M) in enumerate(lift_steps(rep, g0, g1)):
        arrows.append((idx, idx + 1) if d > 0 else (idx + 1, idx))
        mats.append(M)
    return QuiverRep(rep.field, dims, arrows, mats)


def lifted_vertex_interval(rep: CyclicRep, g1, g2) -> Interval:
    if g1 % 2 == 1:
        a, ac = rep.lifted_point((g1 - 1) // 2), True
    else:
        a, ac = rep.lifted_point(g1 // 2 - 1), False
    if g2 % 2 == 1:
        b, bc = rep.lifted_point((g2 - 1) // 2), True
    else:
        b, bc = rep.lifted_point(g2 // 2), False
    return Interval(a, ac, b, bc)


def lifted_vertex_range(I: Interval, C, points):
    """Global lifted vertices covered by ``I`` (bounded)."""
    n = len(points)

    def pidx(x):
        j, r = divmod(x, C)
        try:
            return points.index(r) + n * int(j)
        except ValueError:
            raise RefinementError(f"endpoint {x} is not a lift of a point") from None

    if not I.bounded:
        raise MalformedInput("circle bars must be bounded")
    pa, pb = pidx(I.a), pidx(I.b)
    g1 = 2 * pa + 1 if I.a_closed else 2 * pa + 2
    g2 = 2 * pb + 1 if I.b_closed else 2 * pb
    return g1, g2


def normalize_bar(I: Interval, C) -> Interval:
    j = I.a // C
    return I.translate(-j * C)


# ---------------------------------------------------------------- objects


@dataclass
class CircleSheaf:
    circumference: Fraction
    bars: GradedBarcode
    local: dict = dc_field(default_factory=dict)  # degree -> monodromy matrix

    @property
    def field(self):
        return self.bars.field

    def invariants(self):
        F = self.field
        loc = {d: invariant_factors(F, M) for d, M in self.local.items() if M.shape[0]}
        return self.bars, tuple(sorted(loc.items()))

    def __eq__(self, other):
        return (
            isinstance(other, CircleSheaf)
            and self.circumference == other.circumference
            and self.invariants() == other.invariants()
        )

    def local_rank(self, d=0):
        M = self.local.get(d)
        return 0 if M is None else M.shape[0]

    def to_json(self):
        F = self.field
        return {
            "field": F.to_json(),
            "circumference": str(self.circumference),
            "bars": self.bars.to_json()["bars"],
            "monodromy": {str(d): [[F.elem_str(x) for x in row] for row in M] for d, M in sorted(self.local.items()) if M.shape[0]},
        }


def make_circle_sheaf(C, bars, local=None, field=2):
    C = Fraction(C)
    F = make_field(field)
    bc = GradedBarcode([(normalize_bar(I, C), d, m) for I, d, m in bars], F)
    return CircleSheaf(C, bc, dict(local or {}))


def bar_cyclic_rep(I: Interval, C, points, field) -> CyclicRep:
    """``e_! k_I`` with basis at each vertex indexed by lifts, in increasing order."""
    n = len(points)
    V = 2 * n
    g1, g2 = lifted_vertex_range(I, C, points)
    lifts = [[] for _ in range(V)]
    for g in range(g1, g2 + 1):
        lifts[g % V].append(g // V)
    dims = [len(l) for l in lifts]
    mats = []
    for idx, (s, t) in enumerate(cyclic_arrows(n)):
        A = field.zeros(dims[t], dims[s])
        # even arrows go to the left arc, odd ones to the right arc
        step = -1 if idx % 2 == 0 else 1
        for a, j in enumerate(lifts[s]):
            gt = s + V * j + step
            if g1 <= gt <= g2:
                A[lifts[t].index(gt // V), a] = field.one
        mats.append(A)
    return CyclicRep(field, C, points, dims, mats)


def local_system_rep(M, C, points, field) -> CyclicRep:
    n = len(points)
    r = M.shape[0]
    mats = []
    for idx in range(2 * n):
        # the last arrow closes the loop and carries the monodromy
        mats.append(M.copy() if idx == 2 * n - 1 else field.eye(r))
    return CyclicRep(field, C, points, [r] * (2 * n), mats)


def circle_points(cs: CircleSheaf, extra=()):
    C = cs.circumference
    pts = {Fraction(x) % C for x in extra}
    for I, _, _ in cs.bars:
        pts.update(x % C for x in I.endpoints())
    return sorted(pts) or [Fraction(0)]


def realize_circle_degrees(cs: CircleSheaf, points=None):
    F = cs.field
    C = cs.circumference
    pts = sorted(Fraction(p) for p in points) if points is not None else circle_points(cs)
    out = {}
    degs = set(cs.bars.degrees()) | {d for d, M in cs.local.items() if M.shape[0]}
    for d in degs:
        reps = [bar_cyclic_rep(I, C, pts, F) for I, _ in cs.bars.in_degree(d).expanded()]
        M = cs.local.get(d)
        if M is not None and M.shape[0]:
            reps.append(local_system_rep(M, C, pts, F))
        out[d] = CyclicRep.from_quiver(direct_sum(reps), C, pts)
    return out


def zero_cyclic(field, C, points):
    n = len(points)
    return CyclicRep(field, C, points, [0] * (2 * n), [field.zeros(0, 0) for _ in range(2 * n)])


def realize_circle(cs: CircleSheaf, points=None) -> CyclicRep:
    degs = realize_circle_degrees(cs, points)
    if set(degs) - {0}:
        raise MalformedInput("realize_circle expects a degree-0 circle sheaf")
    if 0 in degs:
        return degs[0]
    pts = sorted(Fraction(p) for p in points) if points is not None else circle_points(cs)
    return zero_cyclic(cs.field, cs.circumference, pts)


# ---------------------------------------------------------------- decomposition


def lifted_bar_multiplicities(rep: CyclicRep):
    """Bounded bars of the lift whose left vertex lies in one period.

    A bar covering ``L`` lifted vertices passes ``ceil(L / 2n)`` times over
    some vertex, so ``L <= 2n * max(dims)``; the window reaches that far.
    """
    V = 2 * rep.n
    D = max(rep.dims) if rep.dims else 0
    g_end = 2 * V + V * D + 1
    lift = lift_rep(rep, 0, g_end)
    steps = lift_steps(rep, 0, g_end)
    out = {}
    prev = rank_sweep(lift, V - 1, steps=steps)  # r(V-1, .)
    for i in range(V, 2 * V):
        cur = rank_sweep(lift, i, steps=steps)

        def r(a, row, j):
            k = j - a
            return row[k] if 0 <= k < len(row) else 0

        for j in range(i, g_end):
            m = r(i, cur, j) - r(i - 1, prev, j) - r(i, cur, j + 1) + r(i - 1, prev, j + 1)
            if m:
                out[(i, j)] = m
        prev = cur
    return out


def _epsilon(phi, S: QuiverRep):
    for v, d in enumerate(S.dims):
        if d:
            return phi[v][0, 0]
    raise ValueError("zero module")


def _split_off(W: QuiverRep, S: QuiverRep, m):
    """Split ``S^m`` off ``W`` through the residue pairing; return the complement."""
    F = W.field
    fs = hom_basis(S, W)
    gs = hom_basis(W, S)
    if not fs or not gs:
        raise AssertionError("expected summand not found")
    P = F.zeros(len(gs), len(fs))
    for a, g in enumerate(gs):
        for b, f in enumerate(fs):
            P[a, b] = _epsilon(compose(g, f, F), S)
    _, cols = F.rref(P)
    _, rows = F.rref(P.T.copy())
    if len(cols) != m:
        raise AssertionError(f"residue pairing rank {len(cols)} != multiplicity {m}")
    G = [gs[a] for a in rows]
    kers = []
    for v in range(W.nv):
        stack = np.concatenate([g[v] for g in G], axis=0)
        kers.append(F.nullspace(stack) if stack.shape[0] else F.eye(W.dims[v]))
    return subrep(W, kers)


def monodromy(rep: QuiverRep, n):
    """Transport once around the circle starting on arc 0."""
    F = rep.field
    r = rep.dims[0]
    T = F.eye(r)
    for k in range(n):
        L, R = rep.mats[2 * k], rep.mats[2 * k + 1]
        if L.shape[0] != L.shape[1] or F.rank(L) < L.shape[0]:
            raise AssertionError("remainder is not locally constant")
        T = F.mul(R, F.mul(F.inv(L), T))
    if T.shape[0] != T.shape[1] or (r and F.rank(T) < r):
        raise AssertionError("monodromy not invertible")
    return T


def decompose_circle(rep: CyclicRep) -> CircleSheaf:
    F = rep.field
    C = rep.C
    mult = lifted_bar_multiplicities(rep)
    bars = []
    W = rep
    for (g1, g2), m in sorted(mult.items()):
        I = normalize_bar(lifted_vertex_interval(rep, g1, g2), C)
        bars.append((I, 0, m))
        S = bar_cyclic_rep(I, C, rep.points, F)
        W = _split_off(W, S, m)
    local = {}
    if W.dims[0]:
        if len(set(W.dims)) != 1:
            raise AssertionError(f"remainder dims {W.dims} not constant")
        T = monodromy(W, rep.n)
        local[0] = rational_canonical_form(F, T)
    elif any(W.dims):
        raise AssertionError(f"remainder dims {W.dims} not constant")
    return CircleSheaf(C, GradedBarcode(bars, F), local)


# ---------------------------------------------------------------- End and Hom


def endo_algebra(I: Interval, C):
    """``(dim, nilpotency index, semisimple)`` of ``End(e_* k_I)``."""
    C = Fraction(C)
    if not I.bounded:
        raise MalformedInput("endo_algebra needs a bounded interval")
    if I.a_closed == I.b_closed:
        return 1, 1, True
    a = I.a if I.a_closed else I.b
    step = C if I.a_closed else -C
    m = 0
    x = a
    while I.contains(x):
        m += 1
        x += step
    return m, m, m == 1


def endo_algebra_oracle(I: Interval, C, field=2):
    """Same triple from ``End`` computed on the cyclic quiver."""
    F = make_field(field)
    C = Fraction(C)
    pts = sorted({x % C for x in I.endpoints()})
    S = bar_cyclic_rep(I, C, pts, F)
    basis = hom_basis(S, S)
    eps = [_epsilon(b, S) for b in basis]
    # kernel of epsilon, as vectors in the End basis
    E = F.asarray([eps], shape=(1, len(basis)))
    Kc = F.nullspace(E)
    rad = []
    for c in range(Kc.shape[1]):
        phi = [F.zeros(*S_v.shape) for S_v in basis[0]]
        for b, coef in enumerate(Kc[:, c]):
            if coef != 0:
                phi = [F.add(x, F.smul(coef, y)) for x, y in zip(phi, basis[b])]
        rad.append(phi)

    def flat(ms):
        return np.concatenate([m.reshape(-1) for m in ms])

    def span_rank(elems):
        if not elems:
            return 0
        M = np.stack([flat(e) for e in elems], axis=0)
        return F.rank(M)

    index = 1
    power = list(rad)
    while span_rank(power) > 0:
        index += 1
        power = [compose(x, y, F) for x in power for y in rad]
        # keep a spanning set small
        if power:
            M = np.stack([flat(e) for e in power], axis=0)
            _, piv = F.rref(M.T.copy())
            power = [power[k] for k in piv]
    return len(basis), index, not rad


def _bar_vs_bar(I, d, J, e, C, field):
    out = GradedVectorSpace()
    lo = int((I.a - J.b) // C) - 1
    hi = int((I.b - J.a) // C) + 1
    for n in range(lo, hi + 1):
        out = out + hom_complex(GradedBarcode([(I, d)], field), GradedBarcode([(J.translate(n * C), e)], field))
    return out


def _centralizer_dim(F, M, N):
    """dim ``{X : N X = X M}``."""
    r, s = M.shape[0], N.shape[0]
    from .linalg import kron

    A = F.sub(kron(F, F.eye(r), N), kron(F, M.T.copy(), F.eye(s)))
    return r * s - (F.rank(A) if A.size else 0)


def hom_circle(cs1: CircleSheaf, cs2: CircleSheaf) -> GradedVectorSpace:
    """Graded ``Hom(cs1, cs2[k])``."""
    if cs1.field != cs2.field:
        raise FieldMismatch("field mismatch")
    if cs1.circumference != cs2.circumference:
        raise MalformedInput("circumference mismatch")
    F = cs1.field
    C = cs1.circumference
    line = Interval.line()
    out = GradedVectorSpace()
    for I, d, m in cs1.bars:
        for J, e, mm in cs2.bars:
            out = out + _bar_vs_bar(I, d, J, e, C, F).scale(m * mm)
        for e, M in cs2.local.items():
            out = out + hom_complex(GradedBarcode([(I, d)], F), GradedBarcode([(line, e)], F)).scale(m * M.shape[0])
    for d, M in cs1.local.items():
        for J, e, mm in cs2.bars:
            out = out + bar_sections(J, False).shift(d - e).scale(mm * M.shape[0])
        for e, N in cs2.local.items():
            c = _centralizer_dim(F, M, N)
            out = out + GradedVectorSpace({e - d: c, e - d + 1: c})
    return out


def hom_circle_oracle(cs1: CircleSheaf, cs2: CircleSheaf) -> GradedVectorSpace:
    pts = sorted(set(circle_points(cs1)) | set(circle_points(cs2)))
    R1 = realize_circle_degrees(cs1, pts)
    R2 = realize_circle_degrees(cs2, pts)
    out = {}
    for d, M in R1.items():
        for e, N in R2.items():
            h, x = hom_ext_dims(M, N)
            out[e - d] = out.get(e - d, 0) + h
            out[e - d + 1] = out.get(e - d + 1, 0) + x
    return GradedVectorSpace(out)


# ---------------------------------------------------------------- checks and random data


def jordan_unipotent(field, r):
    J = field.eye(r)
    for i in range(r - 1):
        J[i, i + 1] = field.one
    return J


def factorization_check(r, I: Interval, C, field=2) -> bool:
    """Precomposition with the section ``a : k -> L_r`` is onto ``Hom(k, e_* k_I)``."""
    F = make_field(field)
    C = Fraction(C)
    pts = sorted({x % C for x in I.endpoints()})
    L = local_system_rep(jordan_unipotent(F, r), C, pts, F)
    K = local_system_rep(F.eye(1), C, pts, F)
    S = bar_cyclic_rep(I, C, pts, F)
    sec = hom_basis(K, L)
    if len(sec) != 1:
        raise AssertionError("unipotent Jordan block should have a single section")
    a = sec[0]
    target = hom_basis(K, S)
    images = [compose(c, a, F) for c in hom_basis(L, S)]
    if not target:
        return True
    if not images:
        return False

    def flat(ms):
        return np.concatenate([m.reshape(-1) for m in ms])

    M = np.stack([flat(e) for e in images], axis=0)
    return F.rank(M) == len(target)


def random_cyclic_rep(field, rng, max_points=6, max_dim=4, C=1):
    F = make_field(field)
    C = Fraction(C)
    n = int(rng.integers(1, max_points + 1))
    grid = sorted(int(x) for x in rng.choice(12, size=n, replace=False))
    pts = [Fraction(g, 12) * C for g in grid]
    dims = [int(rng.integers(0, max_dim + 1)) for _ in range(2 * n)]
    mats = [F.random(rng, dims[t], dims[s]) for s, t in cyclic_arrows(n)]
    return CyclicRep(F, C, pts, dims, mats)


def lifted_rank_invariant(rep: CyclicRep, periods=3):
    V = 2 * rep.n
    g_end = V * periods
    lift = lift_rep(rep, 0, g_end)
    steps = lift_steps(rep, 0, g_end)
    out = {}
    for i in range(g_end + 1):
        for k, r in enumerate(rank_sweep(lift, i, steps=steps)):
            out[(i, i + k)] = r
    return out


def roundtrip_check(rep: CyclicRep):
    """Decompose, realize on the same points, compare invariants."""
    cs = decompose_circle(rep)
    back = realize_circle(cs, rep.points)
    if back.dims != rep.dims:
        return False
    periods = 2 + (max(rep.dims) if rep.dims else 0)
    if lifted_rank_invariant(back, periods) != lifted_rank_invariant(rep, periods):
        return False
    if decompose_circle(back) != cs:
        return False
    # Hom from small indecomposable local systems sees the monodromy
    F = rep.field
    tests = [F.eye(1), jordan_unipotent(F, 2), jordan_unipotent(F, 3)]
    if F.p == 2:
        tests.append(F.asarray([[0, 1], [1, 1]]))  # companion of x^2 + x + 1
    for M in tests:
        X = local_system_rep(M, rep.C, rep.points, F)
        if hom_ext_dims(X, rep) != hom_ext_dims(X, back) or hom_ext_dims(rep, X) != hom_ext_dims(back, X):
            return False
    return True
