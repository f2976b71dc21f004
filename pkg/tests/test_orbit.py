from consheaf import GF2, GF3, GradedBarcode, FieldMismatch, calculus, orbit

import pytest

from conftest import bc


def test_orbit_hom_examples():
    assert orbit.orbit_hom_dim(bc("[0,1)"), bc("[0,1)")) == 1
    assert orbit.orbit_hom_dim(bc("[1,2)"), bc("[0,1)")) == 1
    assert orbit.orbit_hom_dim(GradedBarcode([], GF2), bc("[0,1)")) == 0
    with pytest.raises(FieldMismatch):
        orbit.orbit_hom_dim(bc("[0,1)", field=3), bc("[0,1)", field=3))


def test_orbit_hom_is_sum_over_shifts(rng):
    for _ in range(40):
        F = calculus.random_barcode(rng, GF2, degrees=(-1, 0, 2))
        G = calculus.random_barcode(rng, GF2, degrees=(0, 1))
        assert orbit.orbit_hom_dim(F, G) == calculus.oracle_hom_complex(F, G).total


@pytest.mark.parametrize("i", [0, 1, 2, 7, 10])
def test_dual_numbers_ext(i):
    assert orbit.dualnumbers_ext(i) == 1


def test_k_linear_maps_of_free_module():
    K = orbit.free_module(1)
    assert len(orbit.k_hom_basis(K, K)) == 2
    assert len(orbit.k_hom_basis(orbit.TRIVIAL, K)) == 1


@pytest.mark.parametrize("p, q", [(0, 0), (1, 3), (0, 1), (-3, 3)])
def test_lpq(p, q):
    assert orbit.lpq_triangle_check(p, q)


def test_stabilization():
    assert orbit.stabilization_bound_check(bc("[0,1)"), bc("[0,1)"), 4)
    assert orbit.stabilization_bound_check(bc("[0,1)"), bc(("[0,2)", 3)), 7)
    assert orbit.stabilization_bound_check(GradedBarcode([], GF2), bc("[0,1)"))


def test_point_model_two_ways():
    assert orbit.point_orbit_hom_two_ways({0: 2, 1: 1}, {0: 1, -2: 3}) == (12, 12)
