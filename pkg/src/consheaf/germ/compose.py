"""Indicator complexes and the germ formula for composing kernels."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..errors import MalformedInput
from ..intervals import GradedVectorSpace
from .polytope import PolyCell, rgamma_c

MAX_MIDDLE_DIM = 4


@dataclass(frozen=True)
class IndicatorComplex:
    """``sum m * k_cell[-degree]``; all cells in one ambient dimension."""

    dim: int
    terms: tuple  # (PolyCell, degree, multiplicity)

    @staticmethod
    def make(terms, dim=None):
        terms = [(c, int(d), int(m)) for c, d, m in terms if int(m)]
        if dim is None:
            if not terms:
                raise MalformedInput("cannot infer the dimension of an empty complex")
            dim = terms[0][0].dim
        for c, _, m in terms:
            if c.dim != dim:
                raise MalformedInput("cells of an indicator complex must share one ambient dimension")
            if m < 0:
                raise MalformedInput("multiplicities are nonnegative")
        key = lambda t: (json.dumps(t[0].to_json(), sort_keys=True), t[1])
        return IndicatorComplex(int(dim), tuple(sorted(terms, key=key)))

    @staticmethod
    def of(cell: PolyCell, degree=0):
        return IndicatorComplex.make([(cell, degree, 1)])

    def shift(self, n):
        """``K[n]``."""
        return IndicatorComplex(self.dim, tuple((c, d - n, m) for c, d, m in self.terms))

    def __add__(self, other):
        return IndicatorComplex.make(list(self.terms) + list(other.terms), self.dim)

    def stalk(self, v) -> GradedVectorSpace:
        out = GradedVectorSpace()
        for c, d, m in self.terms:
            if c.contains(v):
                out = out + GradedVectorSpace({d: m})
        return out

    def to_json(self):
        return {"dim": self.dim, "terms": [{"cell": c.to_json()["ineqs"], "degree": d, "multiplicity": m} for c, d, m in self.terms]}

    @staticmethod
    def from_json(d):
        try:
            dim = int(d["dim"])
            terms = [(PolyCell.make(dim, t["cell"]), t.get("degree", 0), t.get("multiplicity", 1)) for t in d["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad indicator complex: {exc}") from None
        return IndicatorComplex.make(terms, dim)


def _middle_dims(kernels, nx, nz):
    dims = []
    prev = nx
    for K in kernels[:-1]:
        d = K.dim - prev
        if d < 0:
            raise MalformedInput("kernel dimensions do not chain")
        dims.append(d)
        prev = d
    if kernels[-1].dim - prev != nz:
        raise MalformedInput("last kernel does not end in the dimension of z")
    return dims


def compose_chain(kernels, x, z, box=None) -> GradedVectorSpace:
    """Stalk of ``K_1 o ... o K_m`` at ``(x, z)``.

    ``RGamma_c`` over ``Y_1 x ... x Y_{m-1}`` of the tensor product of the
    restrictions; indicator terms tensor to indicators of intersections.
    """
    x = [Fraction(v) for v in x]
    z = [Fraction(v) for v in z]
    if not kernels:
        raise MalformedInput("need at least one kernel")
    dims = _middle_dims(kernels, len(x), len(z))
    total = sum(dims)
    if total > MAX_MIDDLE_DIM:
        raise MalformedInput(f"middle space has dimension {total} > {MAX_MIDDLE_DIM}")
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    m = len(kernels)
    pieces = []
    for j, K in enumerate(kernels):
        placed = []
        for c, deg, mult in K.terms:
            cell = c
            fixed_pos, fixed_val = [], []
            if j == 0:
                fixed_pos += list(range(len(x)))
                fixed_val += x
            if j == m - 1:
                fixed_pos += list(range(K.dim - len(z), K.dim))
                fixed_val += z
            cell = cell.fix(fixed_pos, fixed_val)
            # remaining coordinates are Y_{j-1} (if j > 0) then Y_j (if j < m-1)
            idx = []
            if j > 0:
                idx += list(range(offsets[j - 1], offsets[j]))
            if j < m - 1:
                idx += list(range(offsets[j], offsets[j + 1]))
            placed.append((cell.embed(total, idx), deg, mult))
        pieces.append(placed)
    out = GradedVectorSpace()
    for combo in product(*pieces):
        cell = combo[0][0]
        for c, _, _ in combo[1:]:
            cell = cell.intersect(c)
        deg = sum(t[1] for t in combo)
        mult = 1
        for t in combo:
            mult *= t[2]
        out = out + rgamma_c(cell, box).shift(-deg).scale(mult)
    return out


def compose_germ(K1: IndicatorComplex, K2: IndicatorComplex, x, z, box=None) -> GradedVectorSpace:
    """``(K1 o K2)_{(x,z)} = RGamma_c(Y; K1|_{x x Y} (x) K2|_{Y x z})``."""
    return compose_chain([K1, K2], x, z, box)
