from fractions import Fraction

import pytest

from consheaf import GF2, GF3, GradedBarcode, GradedVectorSpace, Interval, MalformedInput
from consheaf import calculus, zigzag
from consheaf.zigzag import ZigzagRep

from conftest import bc

P0 = [Fraction(0)]


def test_zero_rep_has_empty_barcode():
    rep = ZigzagRep(GF2, P0, [0, 0, 0], maps=[(GF2.zeros(0, 0), GF2.zeros(0, 0))])
    assert not zigzag.gabriel_decompose(rep)


def test_decompose_left_ray():
    rep = ZigzagRep(GF2, P0, [1, 1, 0], maps=[(GF2.asarray([[1]], (1, 1)), GF2.zeros(0, 1))])
    assert zigzag.gabriel_decompose(rep) == bc("(-inf,0]")


def test_decompose_line():
    one = GF2.asarray([[1]], (1, 1))
    rep = ZigzagRep(GF2, P0, [1, 1, 1], maps=[(one, one)])
    assert zigzag.gabriel_decompose(rep) == bc("(-inf,inf)")


def test_realize_half_lines():
    rep = zigzag.realize_rep(bc("[0,inf)"), P0)
    assert rep.dims == [0, 1, 1]
    assert int(rep.maps[0][1][0, 0]) == 1
    assert zigzag.realize_rep(bc("(0,inf)"), P0).dims == [0, 0, 1]
    assert zigzag.realize_rep(GradedBarcode([], GF2), P0).dims == [0, 0, 0]


def test_gabriel_roundtrip_random(rng):
    for k in range(40):
        field = GF2 if k % 2 else GF3
        rep = zigzag.random_zigzag(field, rng, max_total=20)
        back = zigzag.realize_rep(zigzag.gabriel_decompose(rep), rep.points)
        assert back.dims == rep.dims
        assert zigzag.rank_invariant(back) == zigzag.rank_invariant(rep)


@pytest.mark.parametrize(
    "I, J, h",
    [("[0,1)", "[0,1)", 1), ("[0,2)", "[1,3)", 1), ("[1,3)", "[0,2)", 0), ("(0,1)", "(2,3)", 0)],
)
def test_hom_dim(I, J, h):
    I, J = Interval.parse(I), Interval.parse(J)
    assert calculus.hom_dim(I, J) == h
    assert calculus.oracle_hom_ext(I, J, GF2)[0] == h


def test_ext1():
    I = Interval.parse("[0,1)")
    assert calculus.ext1_dim(I, I) == 0
    # 0 -> k_[0,1) -> k_[0,2) -> k_[1,2) -> 0 is the nonsplit class (restriction to an open is onto)
    a, b = Interval.parse("[0,1)"), Interval.parse("[1,2)")
    assert calculus.ext1_dim(b, a) == calculus.oracle_hom_ext(b, a, GF2)[1] == 1
    assert calculus.ext1_dim(a, b) == calculus.oracle_hom_ext(a, b, GF2)[1] == 0
    assert calculus.ext1_dim(Interval.parse("(0,1)"), Interval.parse("(2,3)")) == 0


def test_hom_complex_examples():
    assert calculus.hom_complex(GradedBarcode([], GF2), bc("[0,1)")).is_zero()
    assert calculus.hom_complex(bc("[0,1)"), bc("[0,1)")) == GradedVectorSpace({0: 1})
    assert calculus.hom_complex(bc("[1,2)"), bc("[0,1)")) == GradedVectorSpace({1: 1})


def test_hom_complex_against_oracle(rng):
    for _ in range(30):
        F = calculus.random_barcode(rng, GF3, degrees=(0, 1, 2))
        G = calculus.random_barcode(rng, GF3, degrees=(-1, 0))
        assert calculus.hom_complex(F, G) == calculus.oracle_hom_complex(F, G)


def test_tensor():
    assert calculus.tensor(bc("[0,2)"), bc("[1,3)")) == bc("[1,2)")
    assert not calculus.tensor(bc("[0,1)"), bc("[2,3)"))


def test_tensor_against_oracle(rng):
    for _ in range(20):
        F, G = calculus.random_barcode(rng, GF2), calculus.random_barcode(rng, GF2)
        assert calculus.tensor(F, G) == calculus.oracle_tensor(F, G)


def test_dual_prime():
    assert calculus.dual_prime(bc("(0,1)")) == bc("[0,1]")
    assert calculus.dual_prime(bc("[0,1)")) == bc("(0,1]")
    assert calculus.dual_prime(bc("(-inf,inf)")) == bc("(-inf,inf)")


def test_dual_prime_against_oracle(rng):
    for _ in range(30):
        F = calculus.random_barcode(rng, GF2, degrees=(0, 1))
        assert calculus.dual_prime(F) == calculus.oracle_dual(F)
        assert calculus.dual_prime(calculus.dual_prime(F)) == F


def test_compact_sections():
    assert calculus.sections(bc("[0,1]"), True) == GradedVectorSpace({0: 1})
    assert calculus.sections(bc("(0,1)"), True) == GradedVectorSpace({1: 1})
    assert calculus.sections(bc("[0,1)"), True).is_zero()


def test_sections_against_oracle(rng):
    for _ in range(30):
        F = calculus.random_barcode(rng, GF3, degrees=(0, 1))
        for compact in (False, True):
            assert calculus.sections(F, compact) == calculus.oracle_sections(F, compact)


def test_extension_class_count():
    assert calculus.extension_class_count(0, 5) == 1
    assert calculus.extension_class_count(1, 2) == 2
    assert calculus.extension_class_count(2, 2) == 4


def test_interval_parse_rejects_empty():
    with pytest.raises(MalformedInput):
        Interval.parse("(1,1)")
    with pytest.raises(MalformedInput):
        Interval.parse("[2,1]")
