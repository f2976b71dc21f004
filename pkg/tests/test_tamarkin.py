from fractions import Fraction

import pytest

from consheaf import GradedBarcode, GF2, Interval, MalformedInput, tamarkin
from consheaf.intervals import INF

from conftest import bc


def test_half_line_convolution_fixes_tau_bars():
    assert tamarkin.convolve(bc("[1,4)"), tamarkin.HALF_LINE) == bc("[1,4)")


def test_convolution_with_short_kernel():
    # the degree-1 piece appears once the window passes the right end
    out = tamarkin.convolve(bc("[0,3)"), Interval.parse("[0,1)"))
    assert out.in_degree(0) == bc("[0,1)")


def test_open_closed_kernel_kills_bounded_below():
    assert not tamarkin.convolve(bc("[0,2)", "[1,5)"), Interval.parse("(0,2]"))


def test_psi_slice():
    assert tamarkin.psi_slice(bc("[0,inf)"), 1) == bc("[0,1)")
    assert not tamarkin.psi_slice(GradedBarcode([], GF2), 1)
    # see the ledger: the translated copy sits in degree 1
    assert tamarkin.psi_slice(bc("[0,2)"), 3) == bc("[0,2)", ("[3,5)", 1))


@pytest.mark.parametrize("c, expected", [(Fraction(1), True), (Fraction(2), False), (Fraction(5), False)])
def test_tau_component(c, expected):
    assert tamarkin.tau_component_nonzero(Interval.parse("[0,2)"), c) is expected
    assert tamarkin.tau_component_nonzero(Interval.parse("[0,inf)"), c)


def test_energy():
    assert tamarkin.displacement_energy(bc(("[1,4)", 2, 3))).value == 3
    assert tamarkin.displacement_energy(GradedBarcode([], GF2)).value == 0
    assert tamarkin.displacement_energy(bc("[0,inf)")).value == INF
    fs = tamarkin.flying_saucer_barcode()
    assert tamarkin.displacement_energy(fs).value == tamarkin.Q_HALF_PI
    with pytest.raises(MalformedInput):
        tamarkin.displacement_energy(bc("(0,1]"))


def test_slice_triangle():
    for F in (bc("[0,2)"), bc("[0,inf)", "[1,3)"), bc("[0,1)", ("[0,5)", 0, 2))):
        for u in (Fraction(1, 2), Fraction(2), Fraction(7)):
            assert tamarkin.slice_triangle_check(F, u)
