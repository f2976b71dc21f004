from fractions import Fraction

import pytest

from consheaf import GF2, GF3, GradedVectorSpace, Interval, circle
from consheaf.circle import CyclicRep, cyclic_arrows

C = Fraction(2)


def test_zero_rep():
    rep = CyclicRep(GF2, C, [Fraction(0)], [0, 0], [GF2.zeros(0, 0), GF2.zeros(0, 0)])
    cs = circle.decompose_circle(rep)
    assert not cs.bars and cs.local_rank() == 0


def test_constant_sheaf_is_pure_local_system():
    one = GF2.asarray([[1]], (1, 1))
    rep = CyclicRep(GF2, C, [Fraction(0)], [1, 1], [one, one])
    cs = circle.decompose_circle(rep)
    assert not cs.bars
    assert cs.local_rank(0) == 1 and int(cs.local[0][0, 0]) == 1


def test_half_circle_bar():
    cs = circle.make_circle_sheaf(C, [(Interval.parse("[0,1)"), 0, 1)], {}, GF2)
    rep = circle.realize_circle(cs, [Fraction(0), Fraction(1)])
    assert circle.decompose_circle(rep) == cs


def test_cyclic_arrows_close_up():
    arrows = cyclic_arrows(3)
    assert len(arrows) == 6
    assert (5, 0) in arrows


@pytest.mark.parametrize(
    "I, expected",
    [("[0,1]", (1, 1, True)), ("[0,4)", (2, 2, False)), ("[0,5)", (3, 3, False))],
)
def test_endo_algebra(I, expected):
    I = Interval.parse(I)
    assert circle.endo_algebra(I, C) == expected
    assert circle.endo_algebra_oracle(I, C, 2) == expected


def test_hom_circle_examples():
    closed = circle.make_circle_sheaf(C, [(Interval.parse("[0,1]"), 0, 1)], {}, GF2)
    assert circle.hom_circle(closed, closed) == GradedVectorSpace({0: 1})
    # a half-closed bar longer than C also has self-extensions by its translates
    I = Interval.parse("[0,5)")
    cs = circle.make_circle_sheaf(C, [(I, 0, 1)], {}, GF2)
    assert circle.hom_circle(cs, cs)[0] == circle.endo_algebra(I, C)[0]
    assert circle.hom_circle(cs, cs) == circle.hom_circle_oracle(cs, cs) == GradedVectorSpace({0: 3, 1: 2})
    moved = circle.make_circle_sheaf(C, [(I.translate(C), 0, 1)], {}, GF2)
    assert circle.hom_circle(moved, moved) == circle.hom_circle(cs, cs)
    const = circle.make_circle_sheaf(C, [], {0: GF2.eye(1)}, GF2)
    half = circle.make_circle_sheaf(C, [(Interval.parse("[0,1)"), 0, 1)], {}, GF2)
    assert circle.hom_circle(const, half) == circle.hom_circle_oracle(const, half)
    assert circle.hom_circle(half, const) == circle.hom_circle_oracle(half, const)


def test_hom_circle_against_oracle(rng):
    for k in range(15):
        field = GF2 if k % 2 else GF3
        a = circle.decompose_circle(circle.random_cyclic_rep(field, rng, max_points=3, max_dim=2, C=C))
        b = circle.decompose_circle(circle.random_cyclic_rep(field, rng, max_points=3, max_dim=2, C=C))
        assert circle.hom_circle(a, b) == circle.hom_circle_oracle(a, b)


def test_roundtrip_random(rng):
    for k in range(30):
        rep = circle.random_cyclic_rep(GF2 if k % 2 else GF3, rng, C=Fraction(3, 2))
        assert circle.roundtrip_check(rep)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_sections_factor_through_jordan_block(r):
    assert circle.factorization_check(r, Interval.parse("[0,5)"), C)
