"""Zigzag model of constructible sheaves on the real line.

Points ``x_1 < ... < x_n`` cut the line into cells.  Vertex ``2k`` carries the
sections over the open cell ``(x_k, x_{k+1})`` (``x_0 = -inf``,
``x_{n+1} = +inf``) and vertex ``2k+1`` the stalk at ``x_{k+1}``; arrows go
from each stalk to its two neighbouring open cells.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import MalformedInput, RefinementError
from .intervals import GradedBarcode, Interval, is_finite
from .linalg import Field, make_field
from .quiver import QuiverRep, direct_sum, hom_basis


def zigzag_arrows(n):
    arrows = []
    for i in range(n):
        arrows.append((2 * i + 1, 2 * i))
        arrows.append((2 * i + 1, 2 * i + 2))
    return arrows


class ZigzagRep(QuiverRep):
    def __init__(self, field, points, dims, maps=None, mats=None):
        field = make_field(field)
        points = [Fraction(p) for p in points]
        if any(b <= a for a, b in zip(points, points[1:])):
            raise MalformedInput("points must be strictly increasing")
        n = len(points)
        if len(dims) != 2 * n + 1:
            raise MalformedInput(f"expected {2 * n + 1} dims, got {len(dims)}")
        if mats is None:
            if maps is None or len(maps) != n:
                raise MalformedInput("need one (left, right) pair of maps per point")
            mats = []
            for L, R in maps:
                mats.extend([L, R])
        self.points = points
        super().__init__(field, list(dims), zigzag_arrows(n), list(mats))

    @classmethod
    def from_quiver(cls, rep: QuiverRep, points):
        return cls(rep.field, points, rep.dims, mats=rep.mats)

    @property
    def n(self):
        return len(self.points)

    @property
    def maps(self):
        return [(self.mats[2 * i], self.mats[2 * i + 1]) for i in range(self.n)]

    def to_json(self):
        F = self.field
        return {
            "field": F.to_json(),
            "points": [str(p) for p in self.points],
            "dims": list(self.dims),
            "maps": [[[[F.elem_str(x) for x in row] for row in M] for M in pair] for pair in self.maps],
        }


def vertex_range(I: Interval, points):
    """Vertices ``(i, j)`` covered by ``I`` in the zigzag for ``points``."""
    pts = list(points)
    n = len(pts)

    def idx(x):
        try:
            return pts.index(x)
        except ValueError:
            raise RefinementError(f"endpoint {x} not among the points") from None

    if not is_finite(I.a):
        i = 0
    else:
        k = idx(I.a)  # 0-based; stalk vertex 2k+1, cell to its right 2k+2
        i = 2 * k + 1 if I.a_closed else 2 * k + 2
    if not is_finite(I.b):
        j = 2 * n
    else:
        k = idx(I.b)
        j = 2 * k + 1 if I.b_closed else 2 * k
    if i > j:
        raise RefinementError(f"{I} covers no cell")
    return i, j


def vertex_interval(i, j, points) -> Interval:
    """Inverse of :func:`vertex_range`."""
    pts = list(points)
    n = len(pts)
    if i % 2 == 0:
        k = i // 2
        a, ac = (pts[k - 1], False) if k > 0 else ("-inf", False)
    else:
        a, ac = pts[(i - 1) // 2], True
    if j % 2 == 0:
        k = j // 2
        b, bc = (pts[k], False) if k < n else ("inf", False)
    else:
        b, bc = pts[(j - 1) // 2], True
    return Interval(a, ac, b, bc)


def bar_rep(field: Field, n, i, j) -> QuiverRep:
    """Indecomposable with ``k`` on vertices ``i..j``."""
    dims = [1 if i <= v <= j else 0 for v in range(2 * n + 1)]
    mats = []
    for s, t in zigzag_arrows(n):
        A = field.zeros(dims[t], dims[s])
        if dims[s] and dims[t]:
            A[0, 0] = field.one
        mats.append(A)
    return QuiverRep(field, dims, zigzag_arrows(n), mats)


def zero_rep(field, points):
    n = len(points)
    return ZigzagRep(field, points, [0] * (2 * n + 1), mats=[field.zeros(0, 0) for _ in range(2 * n)])


def realize_rep(bc: GradedBarcode, points) -> ZigzagRep:
    """Direct sum of the canonical representations of the bars of ``bc``."""
    F = bc.field
    points = [Fraction(p) for p in points]
    reps = []
    for I, d, m in bc:
        if d != 0:
            raise MalformedInput("realize_rep expects a degree-0 barcode")
        i, j = vertex_range(I, points)
        reps.extend([bar_rep(F, len(points), i, j)] * m)
    if not reps:
        return zero_rep(F, points)
    return ZigzagRep.from_quiver(direct_sum(reps), points)


def _sub_limit_rank(rep: QuiverRep, i, j):
    """Rank of lim -> colim over the sub-zigzag on vertices ``i..j``."""
    F = rep.field
    verts = list(range(i, j + 1))
    dims = [rep.dims[v] for v in verts]
    if 0 in dims:
        return 0
    off = np.cumsum([0] + dims)
    N = int(off[-1])
    inner = [(k, s, t) for k, (s, t) in enumerate(rep.arrows) if i <= s <= j and i <= t <= j]
    # limit: A x_s - x_t = 0 ; colimit relations: iota_s e - iota_t A e
    blocks, rels = [], []
    for k, s, t in inner:
        C = F.zeros(rep.dims[t], N)
        C[:, off[s - i]:off[s - i + 1]] = rep.mats[k]
        C[:, off[t - i]:off[t - i + 1]] = F.sub(C[:, off[t - i]:off[t - i + 1]], F.eye(rep.dims[t]))
        blocks.append(C)
        Rk = F.zeros(N, rep.dims[s])
        Rk[off[s - i]:off[s - i + 1], :] = F.eye(rep.dims[s])
        Rk[off[t - i]:off[t - i + 1], :] = F.neg(rep.mats[k])
        rels.append(Rk)
    if blocks:
        Cmat = np.concatenate(blocks, axis=0)
        L = F.nullspace(Cmat)
        Rel = np.concatenate(rels, axis=1)
    else:
        L = F.eye(N)
        Rel = F.zeros(N, 0)
    P = F.zeros(N, L.shape[1])
    P[off[0]:off[1], :] = L[off[0]:off[1], :]
    r_rel = F.rank(Rel) if Rel.size else 0
    both = np.concatenate([Rel, P], axis=1)
    return (F.rank(both) if both.size else 0) - r_rel


def _path_steps(rep: QuiverRep):
    """``steps[v]`` describes the arrow between vertices ``v`` and ``v+1``.

    Entries are ``(+1, A)`` for ``A : V_v -> V_{v+1}`` and ``(-1, A)`` for
    ``A : V_{v+1} -> V_v``.
    """
    steps = [None] * (rep.nv - 1)
    for (s, t), A in zip(rep.arrows, rep.mats):
        if t == s + 1:
            steps[s] = (1, A)
        elif s == t + 1:
            steps[t] = (-1, A)
        else:
            raise MalformedInput("not a path quiver")
    return steps


def _image(F, A, B):
    if B.shape[1] == 0 or A.shape[0] == 0:
        return F.zeros(A.shape[0], 0)
    return F.colspace(F.mul(A, B))


def _preimage(F, A, B):
    """Basis of ``{x : A x in span B}``."""
    n = A.shape[1]
    if n == 0:
        return F.zeros(0, 0)
    M = np.concatenate([A, B], axis=1)
    if M.shape[0] == 0:
        return F.eye(n)
    N = F.nullspace(M)[:n, :]
    return F.colspace(N) if N.shape[1] else F.zeros(n, 0)


def _span_dim(F, *bases):
    M = np.concatenate(bases, axis=1)
    return F.rank(M) if M.size else 0


def rank_sweep(rep: QuiverRep, i, j_max=None, steps=None):
    """``[r(i, i), r(i, i+1), ...]`` by one left-to-right sweep.

    Keeps the image ``A`` of the limit and the kernel ``K`` of the map to the
    colimit inside the current vertex: a forward arrow pushes both forward, a
    backward arrow pulls both back, and ``r = dim(A + K) - dim K``.
    """
    F = rep.field
    steps = steps if steps is not None else _path_steps(rep)
    j_max = rep.nv - 1 if j_max is None else j_max
    A = F.eye(rep.dims[i])
    K = F.zeros(rep.dims[i], 0)
    out = [A.shape[1]]
    for v in range(i, j_max):
        d, M = steps[v]
        if d > 0:
            A, K = _image(F, M, A), _image(F, M, K)
        else:
            A, K = _preimage(F, M, A), _preimage(F, M, K)
        if A.shape[1] == 0:
            out.extend([0] * (j_max - v))
            break
        out.append(_span_dim(F, A, K) - K.shape[1])
    return out


def rank_invariant(rep: QuiverRep):
    """``{(i, j): rank(lim -> colim)}`` over all sub-zigzags."""
    steps = _path_steps(rep)
    out = {}
    for i in range(rep.nv):
        for k, r in enumerate(rank_sweep(rep, i, steps=steps)):
            out[(i, i + k)] = r
    return out


def rank_invariant_direct(rep: QuiverRep):
    """Same invariant, each window solved from scratch (test oracle)."""
    nv = rep.nv
    return {(i, j): _sub_limit_rank(rep, i, j) for i in range(nv) for j in range(i, nv)}


def multiplicities_from_ranks(r, nv):
    def R(i, j):
        if i < 0 or j >= nv:
            return 0
        return r[(i, j)]

    m = {}
    for i in range(nv):
        for j in range(i, nv):
            v = R(i, j) - R(i - 1, j) - R(i, j + 1) + R(i - 1, j + 1)
            if v:
                m[(i, j)] = v
    return m


def _pairing_multiplicity(rep: QuiverRep, i, j):
    """Rank of the composition pairing Hom(S, V) x Hom(V, S) -> End(S) = k.

    ``S`` is the interval module on ``i..j``.  Compositions through a module
    without ``S`` as a summand land in the radical of ``End(S)``, which is
    zero, so the rank equals the multiplicity of ``S``.
    """
    F = rep.field
    n = (rep.nv - 1) // 2
    S = bar_rep(F, n, i, j)
    fs = hom_basis(S, rep)
    if not fs:
        return 0, fs, []
    gs = hom_basis(rep, S)
    if not gs:
        return 0, fs, gs
    P = F.zeros(len(gs), len(fs))
    for a, g in enumerate(gs):
        for b, f in enumerate(fs):
            P[a, b] = F.mul(g[i], f[i])[0, 0]
    return F.rank(P), fs, gs


def pairing_multiplicities(rep: QuiverRep):
    nv = rep.nv
    mult = {}
    for i in range(nv):
        if rep.dims[i] == 0:
            continue
        for j in range(i, nv):
            if rep.dims[j] == 0:
                break
            m, _, _ = _pairing_multiplicity(rep, i, j)
            if m:
                mult[(i, j)] = m
    return mult


def gabriel_multiplicities(rep: QuiverRep, check=True):
    """``{(i, j): multiplicity}`` of interval summands.

    Read off the rank invariant by inclusion-exclusion.  With ``check`` the
    answer is compared with the Hom-pairing count of split summands and with
    the dimension vector.
    """
    nv = rep.nv
    mult = multiplicities_from_ranks(rank_invariant(rep), nv)
    if any(m < 0 for m in mult.values()):
        raise AssertionError(f"negative multiplicity in {mult}")
    if check:
        dv = [0] * nv
        for (i, j), m in mult.items():
            for v in range(i, j + 1):
                dv[v] += m
        if dv != list(rep.dims):
            raise AssertionError(f"decomposition dims {dv} != {rep.dims}")
        other = pairing_multiplicities(rep)
        if other != mult:
            raise AssertionError(f"rank formula {mult} != pairing multiplicities {other}")
    return mult


def gabriel_decompose(rep: ZigzagRep, check=True) -> GradedBarcode:
    if not isinstance(rep, ZigzagRep):
        raise MalformedInput("expected a ZigzagRep")
    mult = gabriel_multiplicities(rep, check=check)
    bars = [(vertex_interval(i, j, rep.points), 0, m) for (i, j), m in mult.items()]
    return GradedBarcode(bars, rep.field)


def random_zigzag(field, rng, n=None, max_total=40, max_dim=4, points=None):
    """Random representation; dimensions capped so the total stays small."""
    field = make_field(field)
    if points is None:
        if n is None:
            n = int(rng.integers(0, 9))
        points = sorted({Fraction(int(x)) for x in rng.choice(100, size=n, replace=False)}) if n else []
    n = len(points)
    dims = []
    budget = max_total
    for _ in range(2 * n + 1):
        d = int(rng.integers(0, max_dim + 1))
        d = min(d, budget)
        budget -= d
        dims.append(d)
    mats = [field.random(rng, dims[t], dims[s]) for s, t in zigzag_arrows(n)]
    return ZigzagRep(field, points, dims, mats=mats)


def refine_points(*collections):
    pts = set()
    for c in collections:
        pts.update(Fraction(x) for x in c)
    return sorted(pts)
