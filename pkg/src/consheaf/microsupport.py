"""Microsupport of barcodes on the line and microlocal germs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .calculus import barcode_points, hom_complex, realize_degrees
from .errors import MalformedInput
from .intervals import GradedBarcode, GradedVectorSpace, Interval, ext_str, is_finite, to_ext


@dataclass(frozen=True, order=True)
class CovectorPoint:
    """The ray ``{(base; xi) : sign * xi > 0}``."""

    base: Fraction
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise MalformedInput("sign must be +1 or -1")
        object.__setattr__(self, "base", Fraction(self.base))

    @classmethod
    def parse(cls, x, sign):
        if isinstance(sign, str):
            sign = {"+": 1, "-": -1}[sign.strip()]
        return cls(to_ext(x), int(sign))

    def antipode(self):
        return CovectorPoint(self.base, -self.sign)

    def __str__(self):
        return f"({self.base};{'+' if self.sign > 0 else '-'})"

    def to_json(self):
        return {"x": str(self.base), "sign": "+" if self.sign > 0 else "-"}


def _merge_closures(intervals):
    cl = sorted((I.closure() for I in intervals), key=lambda I: I.key())
    out = []
    for I in cl:
        if out and (I.a < out[-1].b or (I.a == out[-1].b and is_finite(I.a))):
            prev = out[-1]
            if I.b > prev.b:
                out[-1] = Interval(prev.a, prev.a_closed, I.b, I.b_closed)
        else:
            out.append(I)
    return tuple(out)


@dataclass(frozen=True)
class MicroSupport1D:
    zero_section_support: tuple
    rays: frozenset

    def antipode(self):
        return MicroSupport1D(self.zero_section_support, frozenset(r.antipode() for r in self.rays))

    def sorted_rays(self):
        return sorted(self.rays)

    def to_json(self):
        return {
            "support": [I.to_json() for I in self.zero_section_support],
            "rays": [r.to_json() for r in self.sorted_rays()],
        }


def bar_rays(I: Interval):
    rays = set()
    if is_finite(I.a):
        rays.add(CovectorPoint(I.a, 1 if I.a_closed else -1))
    if is_finite(I.b):
        rays.add(CovectorPoint(I.b, -1 if I.b_closed else 1))
    return rays


def ss(F: GradedBarcode) -> MicroSupport1D:
    rays = set()
    for I, _, _ in F:
        rays |= bar_rays(I)
    return MicroSupport1D(_merge_closures([I for I, _, _ in F]), frozenset(rays))


def microgerm(F: GradedBarcode, p: CovectorPoint) -> GradedVectorSpace:
    """``(RGamma_{sign*(t-x) >= 0} F)_x`` computed on the zigzag model.

    For sign ``+`` this is the cone of the restriction from the stalk to the
    open cell just left of ``x``, shifted by ``-1``; for ``-`` the right cell.
    """
    pts = sorted(set(barcode_points(F)) | {p.base})
    k = pts.index(p.base)
    out = GradedVectorSpace()
    field = F.field
    for d, rep in realize_degrees(F, pts).items():
        L, R = rep.maps[k]
        M = L if p.sign > 0 else R
        r = field.rank(M) if M.size else 0
        h0 = rep.dims[2 * k + 1] - r
        h1 = M.shape[0] - r
        out = out + GradedVectorSpace({d: h0, d + 1: h1})
    return out


def is_simple_at(F: GradedBarcode, p: CovectorPoint) -> bool:
    return microgerm(F, p).total == 1


def is_pure_at(F: GradedBarcode, p: CovectorPoint) -> bool:
    g = microgerm(F, p)
    return len(g.dims) == 1


def germ_status(F: GradedBarcode, p: CovectorPoint) -> str:
    g = microgerm(F, p)
    if g.is_zero():
        return "not in SS"
    if g.total == 1:
        return "simple"
    return "pure" if len(g.dims) == 1 else "mixed"


def half_line_sections(F: GradedBarcode, b) -> GradedVectorSpace:
    """``RGamma((-inf, b); F)`` as ``RHom(k_{(-inf,b)}, F)``."""
    U = GradedBarcode([(Interval("-inf", False, b, False), 0)], F.field)
    return hom_complex(U, F)


def morse_applies(F: GradedBarcode, a, b) -> bool:
    """No positive ray of ``SS(F)`` over ``[a, b)``."""
    a, b = Fraction(a), Fraction(b)
    return not any(r.sign > 0 and a <= r.base < b for r in ss(F).rays)


def ss_json_rays(rays):
    return [{"x": ext_str(r.base), "sign": "+" if r.sign > 0 else "-"} for r in sorted(rays)]
