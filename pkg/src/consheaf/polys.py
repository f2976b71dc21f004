"""Polynomials over an exact field and the Smith form of ``xI - T``.

A polynomial is a tuple of coefficients, constant term first, with no
trailing zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

from fractions import Fraction

from .linalg import Field


class PolyRing:
    def __init__(self, field: Field):
        self.F = field
        self.p = field.p

    def c(self, x):
        return int(x) % self.p if self.p else Fraction(x)

    def norm(self, a):
        a = [self.c(x) for x in a]
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    def deg(self, a):
        return len(a) - 1

    def inv(self, x):
        return pow(int(x), -1, self.p) if self.p else 1 / Fraction(x)

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def neg(self, a):
        return self.norm([-x for x in a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self.norm(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError
        a = list(a)
        q = [0] * max(len(a) - len(b) + 1, 0)
        lc = self.inv(b[-1])
        while len(a) >= len(b) and a:
            k = len(a) - len(b)
            f = self.c(a[-1] * lc)
            q[k] = f
            for i, y in enumerate(b):
                a[i + k] = self.c(a[i + k] - f * y)
            a = list(self.norm(a))
        return self.norm(q), self.norm(a)

    def monic(self, a):
        if not a:
            return a
        lc = self.inv(a[-1])
        return self.norm([x * lc for x in a])


def invariant_factors(field: Field, T):
    """Non-unit invariant factors of ``xI - T`` (monic, each dividing the next)."""
    R = PolyRing(field)
    n = T.shape[0]
    M = [[R.norm([-T[i, j]] + ([1] if i == j else [])) if i == j else R.norm([-T[i, j]]) for j in range(n)] for i in range(n)]
    diag = []
    for t in range(n):
        while True:
            # pivot: nonzero entry of least degree in the trailing block
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if M[i][j] and (best is None or R.deg(M[i][j]) < R.deg(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                diag.extend([()] * (n - t))
                return _finish(R, diag)
            i, j = best
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
            done = True
            for i in range(t + 1, n):
                if M[i][t]:
                    q, r = R.divmod(M[i][t], M[t][t])
                    M[i] = [R.sub(M[i][k], R.mul(q, M[t][k])) for k in range(n)]
                    if r:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q, r = R.divmod(M[t][j], M[t][t])
                    for row in M:
                        row[j] = R.sub(row[j], R.mul(q, row[t]))
                    if r:
                        done = False
            if not done:
                continue
            # divisibility of the trailing block by the pivot
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if M[i][j] and R.divmod(M[i][j], M[t][t])[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            M[t] = [R.add(M[t][k], M[bad][k]) for k in range(n)]
        diag.append(M[t][t])
    return _finish(R, diag)


def _finish(R, diag):
    out = [R.monic(d) for d in diag if d and R.deg(d) > 0]
    return tuple(out)


def companion(field: Field, poly):
    """Companion matrix of a monic polynomial."""
    d = len(poly) - 1
    C = field.zeros(d, d)
    for i in range(1, d):
        C[i, i - 1] = field.one
    for i in range(d):
        C[i, d - 1] = field.scalar(-poly[i] if field.p is None else (-int(poly[i])) % field.p)
    return C


def rational_canonical_form(field: Field, T):
    from .linalg import block_sizes

    facs = invariant_factors(field, T)
    blocks = [companion(field, f) for f in facs]
    sizes = [b.shape[0] for b in blocks]
    return block_sizes(field, [[blocks[i] if i == j else None for j in range(len(blocks))] for i in range(len(blocks))], sizes, sizes)
