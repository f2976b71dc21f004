"""Locally closed convex polytopes over Q and their compactly supported cohomology.

A cell is a conjunction of affine inequalities ``a . v <= b`` or ``a . v < b``.
Feasibility is decided exactly by Fourier-Motzkin elimination.

For a bounded nonempty cell ``P`` the closure is the non-strict system, and
``P`` is the closure minus the faces cut out by the strict inequalities, so
``RGamma_c(P) = H^*(closure, B)`` with ``B`` the union of those faces.  Each
face is convex, so ``B`` has the homotopy type of the nerve of the faces and
``H^k(closure, B)`` is the reduced cohomology of the nerve in degree ``k-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import MalformedInput, TruncationError
from ..intervals import GradedVectorSpace
from ..linalg import BIG_PRIME, PrimeField

_F = PrimeField(BIG_PRIME)


def _frac(x) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class Ineq:
    coeffs: tuple
    rhs: Fraction
    strict: bool

    @staticmethod
    def make(coeffs, rhs, strict=False):
        return Ineq(tuple(_frac(c) for c in coeffs), _frac(rhs), bool(strict))

    def value(self, v):
        return sum(c * x for c, x in zip(self.coeffs, v))

    def holds(self, v):
        s = self.value(v)
        return s < self.rhs if self.strict else s <= self.rhs

    def tight(self, v):
        return self.value(v) == self.rhs

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs], "rhs": str(self.rhs), "strict": self.strict}

    @staticmethod
    def from_json(d):
        try:
            return Ineq.make(d["coeffs"], d["rhs"], d.get("strict", False))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad inequality {d!r}: {exc}") from None


# ---------------------------------------------------------------- Fourier-Motzkin


def _normalize(coeffs, rhs):
    for c in coeffs:
        if c:
            s = abs(c)
            return tuple(x / s for x in coeffs), rhs / s
    return tuple(coeffs), rhs


def _substitute_equalities(ineqs, eqs, n):
    """Eliminate variables using equalities; returns reduced inequalities or None."""
    ineqs = [(list(a), b, s) for a, b, s in ineqs]
    eqs = [(list(a), b) for a, b in eqs]
    while eqs:
        a, b = eqs.pop()
        j = next((i for i, c in enumerate(a) if c), None)
        if j is None:
            if b != 0:
                return None
            continue
        cj = a[j]

        def sub(row, rhs):
            f = row[j] / cj
            if not f:
                return row, rhs
            return [x - f * y for x, y in zip(row, a)], rhs - f * b

        ineqs = [(*sub(r, h), s) for r, h, s in ineqs]
        eqs = [sub(r, h) for r, h in eqs]
    return ineqs


def feasible(ineqs, n, eqs=()) -> bool:
    """Is ``{v in Q^n : ineqs, eqs}`` nonempty?  ``ineqs`` are ``(a, b, strict)``."""
    rows = _substitute_equalities(ineqs, eqs, n)
    if rows is None:
        return False
    cur = {}
    for a, b, s in rows:
        if not _add_row(cur, a, b, s):
            return False
    live = set(range(n))
    while True:
        used = [j for j in live if any(k[j] for k in cur)]
        if not used:
            return True
        best, best_cost = None, None
        for j in used:
            npos = sum(1 for k in cur if k[j] > 0)
            nneg = sum(1 for k in cur if k[j] < 0)
            cost = npos * nneg - npos - nneg
            if best is None or cost < best_cost:
                best, best_cost = j, cost
        j = best
        pos, neg, rest = [], [], {}
        for k, (b, s) in cur.items():
            if k[j] > 0:
                pos.append((k, b, s))
            elif k[j] < 0:
                neg.append((k, b, s))
            else:
                rest[k] = (b, s)
        cur = rest
        for kp, bp, sp in pos:
            for kn, bn, sn in neg:
                lp, ln = -kn[j], kp[j]
                a = [lp * x + ln * y for x, y in zip(kp, kn)]
                a[j] = Fraction(0)
                if not _add_row(cur, a, lp * bp + ln * bn, sp or sn):
                    return False
        live.discard(j)


def _add_row(cur, a, b, s):
    a, b = _normalize(a, b)
    if not any(a):
        return b > 0 if s else b >= 0
    old = cur.get(a)
    if old is None or b < old[0] or (b == old[0] and s and not old[1]):
        cur[a] = (b, s)
    return True


# ---------------------------------------------------------------- cells


@dataclass(frozen=True)
class PolyCell:
    dim: int
    ineqs: tuple

    def __post_init__(self):
        if self.dim < 0:
            raise MalformedInput("negative dimension")
        for q in self.ineqs:
            if len(q.coeffs) != self.dim:
                raise MalformedInput(f"inequality has {len(q.coeffs)} coefficients, cell dimension is {self.dim}")

    @staticmethod
    def make(dim, ineqs):
        out = []
        for q in ineqs:
            if isinstance(q, Ineq):
                out.append(q)
            elif isinstance(q, dict):
                out.append(Ineq.from_json(q))
            else:
                out.append(Ineq.make(*q))
        return PolyCell(int(dim), tuple(out))

    @staticmethod
    def box(lo, hi, closed=True):
        """Axis-parallel box ``prod [lo_i, hi_i]`` (or open)."""
        d = len(lo)
        rows = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            rows.append(Ineq.make(e, hi[i], not closed))
            e = [0] * d
            e[i] = -1
            rows.append(Ineq.make(e, -Fraction(lo[i]), not closed))
        return PolyCell(d, tuple(rows))

    @staticmethod
    def whole(d):
        return PolyCell(d, ())

    def rows(self):
        return [(q.coeffs, q.rhs, q.strict) for q in self.ineqs]

    def contains(self, v):
        return all(q.holds([Fraction(x) for x in v]) for q in self.ineqs)

    def is_empty(self):
        return not feasible(self.rows(), self.dim)

    def closure(self):
        return PolyCell(self.dim, tuple(Ineq(q.coeffs, q.rhs, False) for q in self.ineqs))

    def intersect(self, other: "PolyCell"):
        if other.dim != self.dim:
            raise MalformedInput("cells live in different dimensions")
        return PolyCell(self.dim, self.ineqs + other.ineqs)

    def fix(self, positions, values):
        """Restrict to ``{v_positions = values}``, as a cell in the remaining coordinates."""
        pos = list(positions)
        vals = {p: Fraction(v) for p, v in zip(pos, values)}
        keep = [i for i in range(self.dim) if i not in vals]
        rows = []
        for q in self.ineqs:
            shift = sum(q.coeffs[p] * vals[p] for p in pos)
            rows.append(Ineq(tuple(q.coeffs[i] for i in keep), q.rhs - shift, q.strict))
        return PolyCell(len(keep), tuple(rows))

    def embed(self, dim, index_map):
        """The cylinder over this cell in ``Q^dim``; coordinate ``i`` goes to ``index_map[i]``."""
        rows = []
        for q in self.ineqs:
            a = [Fraction(0)] * dim
            for i, c in enumerate(q.coeffs):
                a[index_map[i]] += c
            rows.append(Ineq(tuple(a), q.rhs, q.strict))
        return PolyCell(dim, tuple(rows))

    def affine_image_preimage(self, A, c):
        """``{v : A v + c in self}`` for a square rational matrix ``A``."""
        rows = []
        for q in self.ineqs:
            a = tuple(sum(q.coeffs[k] * Fraction(A[k][i]) for k in range(self.dim)) for i in range(len(A[0])))
            rows.append(Ineq(a, q.rhs - sum(q.coeffs[k] * Fraction(c[k]) for k in range(self.dim)), q.strict))
        return PolyCell(len(A[0]), tuple(rows))

    def is_bounded(self):
        """Recession cone of the closure is zero (assumes nonempty)."""
        cone = [(q.coeffs, Fraction(0), False) for q in self.ineqs]
        for i in range(self.dim):
            for sgn in (1, -1):
                e = [Fraction(0)] * self.dim
                e[i] = Fraction(-sgn)
                if feasible(cone + [(tuple(e), Fraction(-1), False)], self.dim):
                    return False
        return True

    def to_json(self):
        return {"dim": self.dim, "ineqs": [q.to_json() for q in self.ineqs]}

    @staticmethod
    def from_json(d):
        if isinstance(d, list):
            if not d:
                raise MalformedInput("cannot infer the dimension of an empty inequality list")
            return PolyCell.make(len(d[0]["coeffs"]), d)
        try:
            return PolyCell.make(d["dim"], d.get("ineqs", []))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad cell {d!r}") from exc


# ---------------------------------------------------------------- RGamma_c


def _nerve_reduced_cohomology(simplices):
    """Reduced cohomology dims of a simplicial complex given by its simplices."""
    by_dim = {-1: [()]}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)
    index = {q: {s: i for i, s in enumerate(sorted(by_dim[q]))} for q in by_dim}
    ranks = {}
    for q in range(-1, top):
        src, dst = index[q], index.get(q + 1, {})
        if not dst:
            ranks[q] = 0
            continue
        M = np.zeros((len(dst), len(src)), dtype=np.int64)
        for t, r in dst.items():
            for k in range(len(t)):
                face = t[:k] + t[k + 1 :]
                M[r, src[face]] = (1 if k % 2 == 0 else -1) % BIG_PRIME
        ranks[q] = _F.rank(M)
    out = {}
    for q in range(-1, top + 1):
        h = len(index[q]) - ranks.get(q, 0) - ranks.get(q - 1, 0)
        if h:
            out[q] = h
    return out


def _rgamma_c_bounded(cell: PolyCell) -> GradedVectorSpace:
    if cell.is_empty():
        return GradedVectorSpace()
    base = [(q.coeffs, q.rhs, False) for q in cell.ineqs]
    strict = [q for q in cell.ineqs if q.strict]
    faces = []
    for i, q in enumerate(strict):
        if feasible(base, cell.dim, [(q.coeffs, q.rhs)]):
            faces.append(i)
    frontier = [(i,) for i in faces]
    simplices = list(frontier)
    seen = set(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            for j in faces:
                if j <= s[-1]:
                    continue
                t = s + (j,)
                if all(t[:k] + t[k + 1 :] in seen for k in range(len(t))):
                    eqs = [(strict[i].coeffs, strict[i].rhs) for i in t]
                    if feasible(base, cell.dim, eqs):
                        nxt.append(t)
        simplices.extend(nxt)
        seen.update(nxt)
        frontier = nxt
    h = _nerve_reduced_cohomology(simplices)
    return GradedVectorSpace({q + 1: v for q, v in h.items()})


def rgamma_c(cell: PolyCell, box=None) -> GradedVectorSpace:
    """Compactly supported cohomology of a locally closed convex polytope.

    Unbounded cells need a truncation radius ``box``: the answer is computed on
    ``cell n (-box, box)^d`` and on the doubled box, and must agree.
    """
    if cell.is_empty():
        return GradedVectorSpace()
    if cell.is_bounded():
        return _rgamma_c_bounded(cell)
    if box is None:
        raise TruncationError("unbounded cell needs a truncation box")
    R = Fraction(box)
    if R <= 0:
        raise MalformedInput("box radius must be positive")
    a = _rgamma_c_bounded(cell.intersect(PolyCell.box([-R] * cell.dim, [R] * cell.dim, closed=False)))
    b = _rgamma_c_bounded(cell.intersect(PolyCell.box([-2 * R] * cell.dim, [2 * R] * cell.dim, closed=False)))
    if a != b:
        raise TruncationError(f"answer changes when the box {R} is doubled")
    return a


def chi_c(cell: PolyCell, box=None) -> int:
    return rgamma_c(cell, box).euler()


def interval_cell(I) -> PolyCell:
    """An interval of the line as a 1-dimensional cell."""
    from ..intervals import is_finite

    rows = []
    if is_finite(I.b):
        rows.append(Ineq.make([1], I.b, not I.b_closed))
    if is_finite(I.a):
        rows.append(Ineq.make([-1], -I.a, not I.a_closed))
    return PolyCell(1, tuple(rows))
