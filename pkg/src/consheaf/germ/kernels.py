"""The geodesic-flow kernel and the square projector kernels.

Balls use the sup norm so every set is polytopal.  The square kernel lives on
``V x V`` with ``V = R^2`` and coordinates ``(x1, x2, y1, y2)``.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import BoundaryPoint, MalformedInput
from ..intervals import GradedBarcode, GradedVectorSpace, Interval
from .compose import IndicatorComplex, compose_chain
from .polytope import Ineq, PolyCell

# ---------------------------------------------------------------- geodesic flow


def _unit(d, i, c=1):
    e = [0] * d
    e[i] = c
    return e


def ball_cell(s, n=1, closed=False) -> PolyCell:
    """``{(x, y) in R^n x R^n : ||x - y||_inf < s}`` (or ``<=``)."""
    s = Fraction(s)
    rows = []
    for i in range(n):
        a = [0] * (2 * n)
        a[i], a[n + i] = 1, -1
        rows.append(Ineq.make(a, s, not closed))
        rows.append(Ineq.make([-c for c in a], s, not closed))
    return PolyCell(2 * n, tuple(rows))


def ball_kernel(s, n=1, closed=False, shift=0) -> IndicatorComplex:
    return IndicatorComplex.of(ball_cell(s, n, closed)).shift(shift)


def translation_kernel(c, n=1) -> IndicatorComplex:
    """Graph of ``x -> x + c`` (first coordinate only shifted)."""
    c = Fraction(c)
    rows = []
    for i in range(n):
        a = [0] * (2 * n)
        a[i], a[n + i] = 1, -1
        off = c if i == 0 else 0
        rows.append(Ineq.make(a, -off))
        rows.append(Ineq.make([-v for v in a], off))
    return IndicatorComplex.of(PolyCell(2 * n, tuple(rows)))


def geodesic_U(n=1) -> PolyCell:
    """``{(x, y, s) : s > 0, ||x - y|| < s}`` in ``R^{2n+1}``."""
    d = 2 * n + 1
    rows = [Ineq.make(_unit(d, 2 * n, -1), 0, True)]
    for i in range(n):
        a = [0] * d
        a[i], a[n + i], a[2 * n] = 1, -1, -1
        rows.append(Ineq.make(a, 0, True))
        a = [0] * d
        a[i], a[n + i], a[2 * n] = -1, 1, -1
        rows.append(Ineq.make(a, 0, True))
    return PolyCell(d, tuple(rows))


def geodesic_Z(n=1) -> PolyCell:
    """``{(x, y, s) : s <= 0, ||x - y|| <= -s}``."""
    d = 2 * n + 1
    rows = [Ineq.make(_unit(d, 2 * n), 0, False)]
    for i in range(n):
        a = [0] * d
        a[i], a[n + i], a[2 * n] = 1, -1, 1
        rows.append(Ineq.make(a, 0, False))
        a = [0] * d
        a[i], a[n + i], a[2 * n] = -1, 1, 1
        rows.append(Ineq.make(a, 0, False))
    return PolyCell(d, tuple(rows))


def geodesic_expected(s, t, x, z, n=1):
    """``k[-n]`` when ``||x - z|| < s + t``; ``None`` on the threshold."""
    dist = max(abs(Fraction(a) - Fraction(b)) for a, b in zip(x, z))
    r = Fraction(s) + Fraction(t)
    if dist == r:
        return None
    return GradedVectorSpace({n: 1}) if dist < r else GradedVectorSpace()


# ---------------------------------------------------------------- square projector


def square_W() -> PolyCell:
    """``W = {y2 - x2 >= |x1 - y1|, |x1| < 1, |y1| < 1}``."""
    return PolyCell.make(
        4,
        [
            ((1, 1, -1, -1), 0, False),
            ((-1, 1, 1, -1), 0, False),
            ((1, 0, 0, 0), 1, True),
            ((-1, 0, 0, 0), 1, True),
            ((0, 0, 1, 0), 1, True),
            ((0, 0, -1, 0), 1, True),
        ],
    )


def _strip_rows(p):
    x1, _, y1, _ = p
    return [(x1, 1, True), (-x1, 1, True), (y1, 1, True), (-y1, 1, True)]


def _c_rows(i, p):
    """``C_i``: ``|x1 - sg y1| <= d < 2 - |x1 + sg y1|`` with ``d = y2 - x2 - 2(i-1)``."""
    x1, x2, y1, y2 = p
    sg = 1 if i % 2 == 1 else -1
    d = y2 - x2 - 2 * (i - 1)
    u, v = x1 - sg * y1, x1 + sg * y1
    # each row: (lhs, rhs, strict) meaning lhs <= rhs / lhs < rhs
    return _strip_rows(p) + [(u, d, False), (-u, d, False), (d + v, 2, True), (d - v, 2, True)]


def _w_rows(i, p):
    x1, x2, y1, y2 = p
    sg = 1 if i % 2 == 1 else -1
    d = y2 - x2 - 2 * (i - 1)
    u = x1 - sg * y1
    return _strip_rows(p) + [(u, d, False), (-u, d, False)]


def _member(rows):
    """``(inside, on_boundary)`` for a full-dimensional set given by rows."""
    closed = all(l <= r for l, r, _ in rows)
    inside = all((l < r) if s else (l <= r) for l, r, s in rows)
    boundary = closed and any(l == r for l, r, _ in rows)
    return inside, boundary


def square_stratum(m, point):
    """``('C', i)``, ``('W', m)`` or ``None`` for a point off all boundaries."""
    p = tuple(Fraction(c) for c in point)
    if len(p) != 4:
        raise MalformedInput("square kernel points live in R^4")
    found = None
    sets = [("C", i, _c_rows(i, p)) for i in range(1, m)] + [("W", m, _w_rows(m, p))]
    for kind, i, rows in sets:
        inside, boundary = _member(rows)
        if boundary:
            raise BoundaryPoint(f"{point} lies on the boundary of {kind}_{i}")
        if inside:
            found = (kind, i)
    return found


def square_expected(m, point) -> GradedVectorSpace:
    """Stalk of ``K_m`` predicted by the cohomology sheaves ``k_{C_{i+1}}``, ``k_{W_m}``."""
    st = square_stratum(m, point)
    if st is None:
        return GradedVectorSpace()
    kind, i = st
    return GradedVectorSpace({i - 1: 1} if kind == "C" else {m - 1: 1})


def square_kernel_stalk(m, point, check_boundary=True) -> GradedVectorSpace:
    """Stalk of ``K_m = k_W o ... o k_W`` (``m`` factors) at ``(x, z)``."""
    m = int(m)
    if not 1 <= m <= 3:
        raise MalformedInput("m must be 1, 2 or 3")
    p = [Fraction(c) for c in point]
    if check_boundary:
        square_stratum(m, p)
    W = IndicatorComplex.of(square_W())
    return compose_chain([W] * m, p[:2], p[2:])


def kinf_line_barcode(x1, x2, y1, window, field=2) -> GradedBarcode:
    """Barcode of ``K_inf`` on the line ``{(x1, x2, y1, y2) : y2 in R}``.

    Bar ``i`` is the intersection with ``C_i`` in degree ``i - 1``; only
    ``C_i`` with ``2i <= window`` are included.
    """
    x1, x2, y1 = Fraction(x1), Fraction(x2), Fraction(y1)
    window = Fraction(window)
    if window < 2:
        raise MalformedInput("window too small: it must reach C_1")
    bars = []
    if abs(x1) < 1 and abs(y1) < 1:
        i = 1
        while 2 * i <= window:
            sg = 1 if i % 2 == 1 else -1
            lo = x2 + 2 * (i - 1) + abs(x1 - sg * y1)
            hi = x2 + 2 * (i - 1) + 2 - abs(x1 + sg * y1)
            if lo < hi:
                bars.append((Interval(lo, True, hi, False), i - 1))
            i += 1
    return GradedBarcode(bars, field)


def sample_square_point(kind, i, rng, den=97):
    """A rational point inside ``C_i`` / ``W_i`` (kind ``'C'`` / ``'W'``), or
    outside the support (kind ``'out'``)."""

    def r01():
        return Fraction(int(rng.integers(1, den)), den)

    x1 = 2 * r01() - 1
    y1 = 2 * r01() - 1
    x2 = Fraction(int(rng.integers(-3 * den, 3 * den + 1)), den)
    sg = 1 if i % 2 == 1 else -1
    lo = abs(x1 - sg * y1)
    if kind == "C":
        hi = 2 - abs(x1 + sg * y1)
        d = lo + (hi - lo) * r01()
        return (x1, x2, y1, x2 + 2 * (i - 1) + d)
    if kind == "W":
        return (x1, x2, y1, x2 + 2 * (i - 1) + lo + 4 * r01())
    if kind == "out":
        if rng.random() < 0.5:
            return (x1, x2, y1, x2 + abs(x1 - y1) - 2 * r01())
        return (1 + r01(), x2, y1, x2 + 2 * r01())
    raise MalformedInput(f"unknown stratum {kind!r}")
