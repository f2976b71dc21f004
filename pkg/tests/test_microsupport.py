from fractions import Fraction

from consheaf import GF3, GradedVectorSpace, calculus, microsupport
from consheaf.microsupport import CovectorPoint

from conftest import bc


def rays(F):
    return microsupport.ss(F).rays


def test_ss_examples():
    assert rays(bc(("(-inf,inf)", 3))) == frozenset()
    assert rays(bc("[0,inf)")) == {CovectorPoint(0, 1)}
    assert rays(bc("(0,1)")) == {CovectorPoint(0, -1), CovectorPoint(1, 1)}


def test_microgerm_examples():
    assert microsupport.microgerm(bc("(-inf,inf)"), CovectorPoint(0, 1)).is_zero()
    assert microsupport.microgerm(bc("[0,1)"), CovectorPoint(0, 1)) == GradedVectorSpace({0: 1})
    assert microsupport.microgerm(bc("[0,1)"), CovectorPoint(1, 1)) == GradedVectorSpace({1: 1})


def test_germ_status():
    p = CovectorPoint(0, 1)
    assert microsupport.germ_status(bc("[0,1)"), p) == "simple"
    assert microsupport.germ_status(bc("[0,1)", "[0,2)"), p) == "pure"
    assert microsupport.germ_status(bc("(-inf,inf)"), p) == "not in SS"


def test_germ_vanishes_exactly_off_ss(rng):
    for _ in range(50):
        F = calculus.random_barcode(rng, GF3, degrees=(0, 1))
        R = rays(F)
        for x in set(F.endpoints()) | {Fraction(1, 3)}:
            for s in (1, -1):
                p = CovectorPoint(x, s)
                assert microsupport.microgerm(F, p).is_zero() == (p not in R)


def test_duality_is_antipode(rng):
    for _ in range(50):
        F = calculus.random_barcode(rng, GF3, degrees=(0, 1))
        assert microsupport.ss(calculus.dual_prime(F)) == microsupport.ss(F).antipode()
