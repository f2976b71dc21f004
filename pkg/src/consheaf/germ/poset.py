"""Global Ext between indicator complexes through the face poset of an arrangement.

Inside an open box, the hyperplanes of all cells cut space into relatively
open convex faces.  The open star of a face is convex and retracts onto it,
so sheaves constructible along the faces are functors on the face poset
(``sigma <= tau`` when ``sigma`` lies in the closure of ``tau``), and
``Ext`` of sheaves is ``Ext`` of poset modules.  The latter is the cohomology
of the complex whose degree-``n`` part is the sum over chains
``sigma_0 < ... < sigma_n`` of ``Hom(F(sigma_0), G(sigma_n))``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import MalformedInput, RefinementError, TruncationError
from ..intervals import GradedVectorSpace
from ..linalg import BIG_PRIME, Field, PrimeField, make_field
from .compose import IndicatorComplex
from .polytope import feasible


def _hyperplane_key(coeffs, rhs):
    """Scale so the first nonzero coefficient is 1; returns ``(key, factor)``."""
    for c in coeffs:
        if c:
            f = 1 / c
            return (tuple(x * f for x in coeffs), rhs * f), c
    raise MalformedInput("inequality with zero coefficients")


class Arrangement:
    def __init__(self, dim, hyperplanes, box):
        self.dim = dim
        self.hyps = list(hyperplanes)  # (coeffs, rhs)
        self.box = Fraction(box)
        self.faces = self._enumerate()
        self.index = {s: i for i, s in enumerate(self.faces)}

    def _box_rows(self):
        rows = []
        for i in range(self.dim):
            e = [Fraction(0)] * self.dim
            e[i] = Fraction(1)
            rows.append((tuple(e), self.box, True))
            rows.append((tuple(-x for x in e), self.box, True))
        return rows

    def _rows_for(self, signs):
        rows, eqs = [], []
        for (a, b), s in zip(self.hyps, signs):
            if s == 0:
                eqs.append((a, b))
            elif s < 0:
                rows.append((a, b, True))
            else:
                rows.append((tuple(-x for x in a), -b, True))
        return rows, eqs

    def _enumerate(self):
        out = []
        base = self._box_rows()

        def rec(prefix):
            rows, eqs = self._rows_for(prefix)
            if not feasible(base + rows, self.dim, eqs):
                return
            if len(prefix) == len(self.hyps):
                out.append(tuple(prefix))
                return
            for s in (-1, 0, 1):
                rec(prefix + [s])

        rec([])
        return out

    @staticmethod
    def leq(s, t):
        """``s`` lies in the closure of ``t``."""
        return all(a == b or a == 0 for a, b in zip(s, t))

    def membership(self, cell):
        """Faces contained in ``cell``; each inequality is a signed hyperplane."""
        conds = []
        for q in cell.ineqs:
            (key, factor) = _hyperplane_key(q.coeffs, q.rhs)
            i = self._hyp_index[key]
            conds.append((i, 1 if factor > 0 else -1, q.strict))
        inside = set()
        for s in self.faces:
            ok = True
            for i, sg, strict in conds:
                v = s[i] * sg
                if v > 0 or (strict and v == 0):
                    ok = False
                    break
            if ok:
                inside.add(s)
        return inside


def build_arrangement(cells, box) -> Arrangement:
    dim = cells[0].dim
    keys = {}
    for c in cells:
        for q in c.ineqs:
            key, _ = _hyperplane_key(q.coeffs, q.rhs)
            keys.setdefault(key, len(keys))
    hyps = sorted(keys, key=lambda k: keys[k])
    arr = Arrangement(dim, hyps, box)
    arr._hyp_index = {k: i for i, k in enumerate(hyps)}
    return arr


def _check_locally_closed(arr, A):
    for s in A:
        for t in A:
            if s != t and arr.leq(s, t):
                for u in arr.faces:
                    if u not in A and arr.leq(s, u) and arr.leq(u, t):
                        raise RefinementError("indicator set is not locally closed in the face poset")


def _chains(arr, A, B, n):
    """Chains ``s_0 < ... < s_n`` with ``s_0`` in ``A`` and ``s_n`` in ``B``."""
    faces = arr.faces
    up = {s: [t for t in faces if t != s and arr.leq(s, t)] for s in faces}
    out = []

    def rec(chain):
        if len(chain) == n + 1:
            if chain[-1] in B:
                out.append(tuple(chain))
            return
        for t in up[chain[-1]]:
            rec(chain + [t])

    for s in sorted(A):
        rec([s])
    return out


def indicator_ext(arr, A, B, field: Field, check=True):
    """``dim Ext^n(k_A, k_B)`` over the face poset, plus the coboundary matrices."""
    if not A or not B:
        return {}, []
    longest = arr.dim + 1
    chains = [_chains(arr, A, B, n) for n in range(longest + 1)]
    idx = [{c: i for i, c in enumerate(ch)} for ch in chains]

    def delta(n):
        src, dst = idx[n], idx[n + 1]
        M = field.zeros(len(dst), len(src))
        for c, r in dst.items():
            # deleting s_i carries the sign (-1)^i; the ends act through F and G
            head = c[:-1]
            if head in src and c[-2] in B:
                M[r, src[head]] = _add(field, M[r, src[head]], (-1) ** (n + 1))
            for i in range(1, n + 1):
                face = c[:i] + c[i + 1 :]
                if face in src:
                    M[r, src[face]] = _add(field, M[r, src[face]], (-1) ** i)
            tail = c[1:]
            if tail in src and c[0] in A:
                M[r, src[tail]] = _add(field, M[r, src[tail]], 1)
        return M

    mats = [delta(n) for n in range(longest)]
    if check:
        for n in range(longest - 1):
            if not field.is_zero(field.mul(mats[n + 1], mats[n])):
                raise AssertionError("coboundary squares to a nonzero map")
    ranks = [field.rank(M) if M.size else 0 for M in mats]
    out = {}
    for n in range(longest + 1):
        r_out = ranks[n] if n < len(ranks) else 0
        r_in = ranks[n - 1] if n > 0 else 0
        h = len(chains[n]) - r_out - r_in
        if h:
            out[n] = h
    return out, mats


def _add(field, x, sgn):
    if field.p is None:
        return x + sgn
    return (int(x) + sgn) % field.p


def _hom_at_box(F: IndicatorComplex, G: IndicatorComplex, box, field):
    cells = [c for c, _, _ in F.terms] + [c for c, _, _ in G.terms]
    arr = build_arrangement(cells, box)
    sets_F = [(arr.membership(c), d, m) for c, d, m in F.terms]
    sets_G = [(arr.membership(c), d, m) for c, d, m in G.terms]
    for A, _, _ in sets_F + sets_G:
        _check_locally_closed(arr, A)
    out = {}
    for A, d, m in sets_F:
        for B, e, k in sets_G:
            ext, _ = indicator_ext(arr, A, B, field)
            for n, v in ext.items():
                # Hom(k_A[-d], k_B[-e][j]) = Ext^{j + d - e}
                j = n - d + e
                out[j] = out.get(j, 0) + v * m * k
    return GradedVectorSpace(out)


def hom_global_poset(F: IndicatorComplex, G: IndicatorComplex, box, field=None) -> GradedVectorSpace:
    """``{k: dim Hom(F, G[k])}`` on the open box ``(-box, box)^d``; the answer
    must not change when the box is doubled."""
    if F.dim != G.dim:
        raise MalformedInput("complexes live in different dimensions")
    field = PrimeField(BIG_PRIME) if field is None else make_field(field)
    a = _hom_at_box(F, G, box, field)
    b = _hom_at_box(F, G, 2 * Fraction(box), field)
    if a != b:
        raise TruncationError(f"global Hom changes when the box {box} is doubled: {a} vs {b}")
    return a
