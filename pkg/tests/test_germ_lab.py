from fractions import Fraction

import pytest

from consheaf import GF2, GF3, GradedVectorSpace, Interval, MalformedInput, TruncationError, calculus
from consheaf.errors import BoundaryPoint
from consheaf.germ import (
    ConicSheaf1D,
    IndicatorComplex,
    PolyCell,
    ball_kernel,
    compose_chain,
    compose_germ,
    fourier_sato_1d,
    fourier_sato_germs,
    geodesic_U,
    geodesic_Z,
    hom_global_poset,
    interval_cell,
    inverse_roundtrip_check,
    kinf_line_barcode,
    rgamma_c,
    square_kernel_stalk,
    translation_kernel,
)
from consheaf.germ.polytope import feasible

from conftest import bc

G = GradedVectorSpace


# ---------------------------------------------------------------- polytopes


def test_fourier_motzkin_strictness():
    # x < 1 and x > 1 - 0 is empty; x <= 1 and x >= 1 is a point
    assert not feasible([((1,), 1, True), ((-1,), -1, False)], 1)
    assert feasible([((1,), 1, False), ((-1,), -1, False)], 1)
    assert not feasible([((1, 1), 0, True), ((-1, 0), 0, False), ((0, -1), 0, False)], 2)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_rgamma_c_boxes(d):
    assert rgamma_c(PolyCell.box([0] * d, [1] * d, closed=False)) == G({d: 1})
    assert rgamma_c(PolyCell.box([0] * d, [1] * d, closed=True)) == G({0: 1})


def test_rgamma_c_half_open_square():
    cell = PolyCell.make(2, [((1, 0), 1, True), ((-1, 0), 0, False), ((0, 1), 1, True), ((0, -1), 0, False)])
    assert rgamma_c(cell).is_zero()


def test_rgamma_c_point_and_plane():
    pt = PolyCell.make(2, [((1, 0), 0, False), ((-1, 0), 0, False), ((0, 1), 0, False), ((0, -1), 0, False)])
    assert rgamma_c(pt) == G({0: 1})
    assert rgamma_c(PolyCell.whole(2), box=5) == G({2: 1})
    with pytest.raises(TruncationError):
        rgamma_c(PolyCell.whole(2))


def test_rgamma_c_matches_intervals(rng):
    for _ in range(40):
        I = calculus.random_interval(rng)
        assert rgamma_c(interval_cell(I), box=100) == calculus.bar_sections(I, True)


def test_closed_half_line_has_no_compact_cohomology():
    cell = PolyCell.make(1, [((-1,), 0, False)])
    assert rgamma_c(cell, box=10).is_zero()


# ---------------------------------------------------------------- composition


def test_geodesic_germ_examples():
    K1, K2 = ball_kernel(1), ball_kernel(Fraction(1, 2))
    assert compose_germ(K1, K2, [0], [1]) == G({1: 1})
    assert compose_germ(K1, K2, [0], [2]).is_zero()
    far = IndicatorComplex.of(PolyCell.box([10, 10], [11, 11]))
    assert compose_germ(K1, far, [0], [0]).is_zero()


def test_geodesic_germs_in_two_dimensions():
    K1, K2 = ball_kernel(1, n=2), ball_kernel(1, n=2)
    assert compose_germ(K1, K2, [0, 0], [1, Fraction(3, 2)]) == G({2: 1})
    assert compose_germ(K1, K2, [0, 0], [3, 0]).is_zero()


def test_translation_kernels_compose():
    T1, T2 = translation_kernel(1), translation_kernel(Fraction(1, 2))
    assert compose_germ(T1, T2, [0], [Fraction(3, 2)]) == G({0: 1})
    assert compose_germ(T1, T2, [0], [1]).is_zero()


def test_chain_of_three():
    K = [ball_kernel(1, shift=1)] * 3
    assert compose_chain(K, [0], [Fraction(5, 2)]) == G({-1: 1})
    assert compose_chain(K, [0], [4]).is_zero()


def test_middle_dimension_limit():
    with pytest.raises(MalformedInput):
        compose_chain([ball_kernel(1, n=3)] * 3, [0] * 3, [0] * 3)


# ---------------------------------------------------------------- square kernel


@pytest.mark.parametrize(
    "m, point, expected",
    [
        (2, (0, 0, 0, Fraction(1, 2)), {0: 1}),
        (2, (0, 0, 0, 3), {1: 1}),
        (2, (0, 0, 0, -1), {}),
        (3, (0, 0, 0, Fraction(5, 2)), {1: 1}),
        (3, (0, 0, 0, 5), {2: 1}),
    ],
)
def test_square_kernel_stalks(m, point, expected):
    assert square_kernel_stalk(m, point) == G(expected)


def test_square_kernel_boundary_rejected():
    with pytest.raises(BoundaryPoint):
        square_kernel_stalk(2, (0, 0, 0, 2))


def test_kinf_lines():
    bars = kinf_line_barcode(0, 0, 0, 12)
    assert all(I.length <= 4 for I, _, _ in bars)
    assert len(bars) == 6
    assert not kinf_line_barcode(2, 0, 0, 12)


# ---------------------------------------------------------------- global Hom


def test_hom_closed_box():
    C = IndicatorComplex.of(PolyCell.box([0] * 3, [1] * 3, closed=True))
    assert hom_global_poset(C, C, 4) == G({0: 1})


def test_geodesic_triangle():
    Z, U = IndicatorComplex.of(geodesic_Z()), IndicatorComplex.of(geodesic_U())
    assert hom_global_poset(Z, U, 4) == G({2: 1})
    assert hom_global_poset(U, Z, 4).is_zero()


def test_poset_hom_matches_line(rng):
    for _ in range(25):
        I, J = calculus.random_interval(rng, grid=5), calculus.random_interval(rng, grid=5)
        F, Gc = IndicatorComplex.of(interval_cell(I)), IndicatorComplex.of(interval_cell(J))
        assert hom_global_poset(F, Gc, 20, GF3) == calculus.hom_complex(bc(str(I)), bc(str(J)))


def test_poset_hom_box_too_small():
    # at radius 10 the second set is cut away entirely
    F = IndicatorComplex.of(interval_cell(Interval.parse("[0,15)")))
    Gc = IndicatorComplex.of(interval_cell(Interval.parse("[12,30)")))
    assert hom_global_poset(F, Gc, 20) == G({0: 1})
    with pytest.raises(TruncationError):
        hom_global_poset(F, Gc, 10)


# ---------------------------------------------------------------- Fourier-Sato


def test_fourier_sato_germs():
    assert fourier_sato_germs(ConicSheaf1D.from_barcode(bc())) == {s: G() for s in (-1, 0, 1)}
    g = fourier_sato_germs(ConicSheaf1D.from_barcode(bc("[0,inf)")))
    assert g == {1: G({0: 1}), 0: G(), -1: G()}
    g = fourier_sato_germs(ConicSheaf1D.from_barcode(bc("{0}")))
    assert g == {s: G({0: 1}) for s in (-1, 0, 1)}


@pytest.mark.parametrize(
    "src, dst",
    [
        ("[0,inf)", ("(0,inf)", 0)),
        ("{0}", ("(-inf,inf)", 0)),
        ("(0,inf)", ("(-inf,0]", 1)),
        ("(-inf,0]", ("(-inf,0)", 0)),
        ("(-inf,0)", ("[0,inf)", 1)),
        ("(-inf,inf)", ("{0}", 1)),
    ],
)
def test_fourier_sato_table(src, dst):
    F = ConicSheaf1D.from_barcode(bc(src))
    assert fourier_sato_1d(F).barcode() == bc(dst)
    assert inverse_roundtrip_check(F)


def test_fourier_sato_rejects_non_conic():
    with pytest.raises(MalformedInput):
        ConicSheaf1D.from_barcode(bc("[0,1)"))


def test_conic_from_data():
    F = ConicSheaf1D.from_data(GF2, {0: 1}, {0: 1}, {0: 1}, {0: [[1]]}, {0: [[1]]})
    assert F.barcode() == bc("(-inf,inf)")
