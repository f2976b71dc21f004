"""Representations of finite acyclic quivers over an exact field.

Everything sheaf-theoretic in dimension one reduces to these: the zigzag
model of a constructible sheaf on the line, its cyclic analogue on the circle,
and the Hom/Ext oracle used to validate the closed-form interval calculus.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedInput
from .linalg import Field, block_sizes, kron, unvec


@dataclass
class QuiverRep:
    field: Field
    dims: list
    arrows: list  # (source, target)
    mats: list  # mats[k] : V_source -> V_target, shape (dims[t], dims[s])

    def __post_init__(self):
        self.dims = [int(d) for d in self.dims]
        if len(self.arrows) != len(self.mats):
            raise MalformedInput("one matrix per arrow required")
        for (s, t), A in zip(self.arrows, self.mats):
            if A.shape != (self.dims[t], self.dims[s]):
                raise MalformedInput(f"arrow {s}->{t}: shape {A.shape}, expected {(self.dims[t], self.dims[s])}")

    @property
    def nv(self):
        return len(self.dims)

    @property
    def total_dim(self):
        return sum(self.dims)

    def offsets(self):
        out, o = [], 0
        for d in self.dims:
            out.append(o)
            o += d
        return out


def direct_sum(reps):
    reps = list(reps)
    F = reps[0].field
    dims = [sum(r.dims[v] for r in reps) for v in range(reps[0].nv)]
    mats = []
    for k, (s, t) in enumerate(reps[0].arrows):
        mats.append(block_sizes(F, [[r.mats[k] if a == b else None for b, r in enumerate(reps)] for a, _ in enumerate(reps)],
                                [r.dims[t] for r in reps], [r.dims[s] for r in reps]))
    return QuiverRep(F, dims, list(reps[0].arrows), mats)


def change_basis(rep: QuiverRep, gs):
    """Conjugate by invertible ``gs[v]``: new map is ``g_t A g_s^{-1}``."""
    F = rep.field
    inv = [F.inv(g) if g.shape[0] else g for g in gs]
    mats = [F.mul(F.mul(gs[t], A), inv[s]) for (s, t), A in zip(rep.arrows, rep.mats)]
    return QuiverRep(F, list(rep.dims), list(rep.arrows), mats)


def _phi(M: QuiverRep, N: QuiverRep):
    """Matrix of f -> (N_a f_s - f_t M_a)_a on the vec'd vertex maps."""
    F = M.field
    cols = [N.dims[v] * M.dims[v] for v in range(M.nv)]
    rows = [N.dims[t] * M.dims[s] for (s, t) in M.arrows]
    blocks = [[None] * M.nv for _ in M.arrows]
    for k, (s, t) in enumerate(M.arrows):
        A = kron(F, F.eye(M.dims[s]), N.mats[k])
        B = kron(F, M.mats[k].T.copy(), F.eye(N.dims[t]))
        if s == t:
            blocks[k][s] = F.sub(A, B)
        else:
            blocks[k][s] = A
            blocks[k][t] = F.neg(B)
    return block_sizes(F, blocks, rows, cols), cols


def hom_ext_dims(M: QuiverRep, N: QuiverRep):
    """``(dim Hom(M,N), dim Ext^1(M,N))`` over a hereditary path algebra."""
    P, cols = _phi(M, N)
    r = M.field.rank(P) if P.size else 0
    return sum(cols) - r, P.shape[0] - r


def hom_basis(M: QuiverRep, N: QuiverRep):
    """List of morphisms, each a list of vertex matrices ``N_v x M_v``."""
    F = M.field
    P, cols = _phi(M, N)
    if P.shape[0] == 0:
        K = F.eye(sum(cols))
    else:
        K = F.nullspace(P)
    out = []
    for c in range(K.shape[1]):
        f, o = [], 0
        for v in range(M.nv):
            sz = cols[v]
            f.append(unvec(F, K[o:o + sz, c], N.dims[v], M.dims[v]))
            o += sz
        out.append(f)
    return out


def is_morphism(M, N, f) -> bool:
    F = M.field
    for k, (s, t) in enumerate(M.arrows):
        if not F.equal(F.mul(N.mats[k], f[s]), F.mul(f[t], M.mats[k])):
            return False
    return True


def compose(g, f, field):
    return [field.mul(gv, fv) for gv, fv in zip(g, f)]


def subrep(rep: QuiverRep, bases):
    """Subrepresentation on column bases ``bases[v]`` (must be invariant)."""
    F = rep.field
    mats = []
    for (s, t), A in zip(rep.arrows, rep.mats):
        img = F.mul(A, bases[s])
        X = F.solve(bases[t], img) if bases[t].shape[1] else (F.zeros(0, bases[s].shape[1]) if F.is_zero(img) else None)
        if X is None:
            raise ValueError("subspaces are not invariant")
        mats.append(X)
    return QuiverRep(F, [b.shape[1] for b in bases], list(rep.arrows), mats)


def _complement(F: Field, B, n):
    """Standard basis vectors completing the columns of ``B`` to a basis."""
    chosen = []
    cur = B
    for i in range(n):
        e = F.zeros(n, 1)
        e[i, 0] = F.one
        trial = np.concatenate([cur, e], axis=1)
        if F.rank(trial) > cur.shape[1]:
            chosen.append(i)
            cur = trial
        if cur.shape[1] == n:
            break
    C = F.zeros(n, len(chosen))
    for k, i in enumerate(chosen):
        C[i, k] = F.one
    return C


def quotient_rep(rep: QuiverRep, bases):
    """Quotient by the invariant subspaces spanned by ``bases``; also returns projections."""
    F = rep.field
    comps, projs = [], []
    for v, B in enumerate(bases):
        n = rep.dims[v]
        C = _complement(F, B, n)
        full = np.concatenate([B, C], axis=1)
        if n:
            Q = F.inv(full)[B.shape[1]:, :]
        else:
            Q = F.zeros(0, 0)
        comps.append(C)
        projs.append(Q)
    mats = [F.mul(projs[t], F.mul(A, comps[s])) for (s, t), A in zip(rep.arrows, rep.mats)]
    return QuiverRep(F, [c.shape[1] for c in comps], list(rep.arrows), mats), projs


def kernel_rep(M: QuiverRep, f):
    F = M.field
    return subrep(M, [F.nullspace(fv) if fv.shape[0] else F.eye(fv.shape[1]) for fv in f])


def image_bases(N: QuiverRep, f):
    F = N.field
    return [F.colspace(fv) if fv.size else F.zeros(N.dims[v], 0) for v, fv in enumerate(f)]


def image_rep(N: QuiverRep, f):
    return subrep(N, image_bases(N, f))


def cokernel_rep(N: QuiverRep, f):
    return quotient_rep(N, image_bases(N, f))[0]


def random_rep(field: Field, rng, dims, arrows):
    mats = [field.random(rng, dims[t], dims[s]) for s, t in arrows]
    return QuiverRep(field, list(dims), list(arrows), mats)


def random_morphism(M: QuiverRep, N: QuiverRep, rng):
    """Random linear combination of a Hom basis."""
    F = M.field
    basis = hom_basis(M, N)
    f = [F.zeros(N.dims[v], M.dims[v]) for v in range(M.nv)]
    for b in basis:
        c = F.random(rng, 1, 1)[0, 0]
        f = [F.add(fv, F.smul(c, bv)) for fv, bv in zip(f, b)]
    return f
