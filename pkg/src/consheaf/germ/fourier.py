"""Fourier-Sato transform of conic sheaves on the line.

A conic sheaf on ``R`` is ``(E_-, E_0, E_+)`` with generization maps
``rho_- : E_0 -> E_-`` and ``rho_+ : E_0 -> E_+`` in each degree, i.e. a zigzag
representation with the single point ``0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..calculus import bar_sections
from ..errors import MalformedInput
from ..intervals import INF, NINF, GradedBarcode, GradedVectorSpace, Interval
from ..linalg import Field, make_field
from ..zigzag import ZigzagRep, gabriel_decompose, realize_rep

ORIGIN = [Fraction(0)]
NEG_RAY = Interval(NINF, False, 0, True)  # nu <= 0
POS_RAY = Interval(0, True, INF, False)  # nu >= 0
LINE = Interval.line()


@dataclass
class ConicSheaf1D:
    field: Field
    reps: dict = dc_field(default_factory=dict)  # degree -> ZigzagRep on [0]

    @staticmethod
    def from_data(field, E_minus, E_zero, E_plus, rho_minus, rho_plus):
        """Degreewise dims and matrices ``rho_-[d] : E_0 -> E_-``, ``rho_+[d] : E_0 -> E_+``."""
        field = make_field(field)
        degs = set(E_minus) | set(E_zero) | set(E_plus)
        reps = {}
        for d in degs:
            dims = [int(E_minus.get(d, 0)), int(E_zero.get(d, 0)), int(E_plus.get(d, 0))]
            A = rho_minus.get(d)
            B = rho_plus.get(d)
            A = field.zeros(dims[0], dims[1]) if A is None else field.asarray(A, (dims[0], dims[1]))
            B = field.zeros(dims[2], dims[1]) if B is None else field.asarray(B, (dims[2], dims[1]))
            reps[d] = ZigzagRep(field, ORIGIN, dims, maps=[(A, B)])
        return ConicSheaf1D(field, reps)

    @staticmethod
    def from_barcode(F: GradedBarcode):
        for I, _, _ in F:
            if not _is_conic(I):
                raise MalformedInput(f"{I} is not a conic interval")
        reps = {d: realize_rep(F.in_degree(d).shift(d), ORIGIN) for d in F.degrees()}
        return ConicSheaf1D(F.field, reps)

    def barcode(self) -> GradedBarcode:
        out = GradedBarcode([], self.field)
        for d, rep in self.reps.items():
            out = out + gabriel_decompose(rep).shift(-d)
        return out

    def germs(self):
        """``{-1: E_-, 0: E_0, 1: E_+}`` as graded spaces."""
        out = {}
        for sgn, v in ((-1, 0), (0, 1), (1, 2)):
            out[sgn] = GradedVectorSpace({d: rep.dims[v] for d, rep in self.reps.items()})
        return out

    def to_json(self):
        return {"barcode": self.barcode().to_json(), "germs": {str(k): v.to_json() for k, v in self.germs().items()}}


def _is_conic(I: Interval) -> bool:
    return all(e in (0, INF, NINF) for e in (I.a, I.b))


def _germ(I: Interval, ray: Interval) -> GradedVectorSpace:
    J = I.intersect(ray)
    return GradedVectorSpace() if J is None else bar_sections(J, True)


def _recognize(germs, d):
    """The conic interval and degree with the given stalks at ``-1, 0, 1``."""
    nz = {s: g for s, g in germs.items() if not g.is_zero()}
    if not nz:
        return None
    degs = {k for g in nz.values() for k in g.dims}
    if len(degs) != 1 or any(g.total != 1 for g in nz.values()):
        raise MalformedInput("germs of a rank-one transform must be one-dimensional in one degree")
    (e,) = degs
    support = tuple(sorted(nz))
    table = {
        (-1, 0, 1): LINE,
        (0,): Interval.point(0),
        (1,): Interval(0, False, INF, False),
        (0, 1): POS_RAY,
        (-1,): Interval(NINF, False, 0, False),
        (-1, 0): NEG_RAY,
    }
    if support not in table:
        raise MalformedInput(f"support {support} is not a conic interval")
    return table[support], d + e


def transform_bars(F: GradedBarcode, antipodal=False) -> GradedBarcode:
    """Bar by bar: the germ at ``xi`` is ``RGamma_c`` over ``{nu : nu xi <= 0}``
    (``>= 0`` for the antipodal kernel)."""
    rays = {1: NEG_RAY, -1: POS_RAY, 0: LINE}
    if antipodal:
        rays = {1: POS_RAY, -1: NEG_RAY, 0: LINE}
    bars = []
    for I, d, m in F:
        if not _is_conic(I):
            raise MalformedInput(f"{I} is not a conic interval")
        germs = {s: _germ(I, ray) for s, ray in rays.items()}
        rec = _recognize(germs, d)
        if rec is not None:
            bars.append((rec[0], rec[1], m))
    return GradedBarcode(bars, F.field)


def fourier_sato_1d(F: ConicSheaf1D, antipodal=False) -> ConicSheaf1D:
    return ConicSheaf1D.from_barcode(transform_bars(F.barcode(), antipodal))


def fourier_sato_germs(F: ConicSheaf1D):
    """Germs of the transform at ``xi < 0``, ``xi = 0``, ``xi > 0``, summed over bars."""
    rays = {1: NEG_RAY, -1: POS_RAY, 0: LINE}
    out = {s: GradedVectorSpace() for s in rays}
    for I, d, m in F.barcode():
        for s, ray in rays.items():
            out[s] = out[s] + _germ(I, ray).shift(-d).scale(m)
    return out


def inverse_roundtrip_check(F: ConicSheaf1D) -> bool:
    """Transforming with ``P`` then with the antipodal kernel gives ``F[-1]``."""
    back = fourier_sato_1d(fourier_sato_1d(F), antipodal=True)
    return back.barcode() == F.barcode().shift(-1)
