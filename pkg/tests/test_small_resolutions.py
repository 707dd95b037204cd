"""The 2-periodic resolution of R[Z/n] and the two-term resolution of
R[Z]: exactness data and diagonal approximations."""

import pytest
from hypothesis import given, settings, strategies as st

from hhbv.coeff import ZZ, Zmod
from hhbv.group_ring import GroupRingElement, cyclic, infinite_cyclic
from hhbv.small_resolutions import (contracting_homotopy, counit_check,
                                    diagonal, koszul_z_boundary,
                                    koszul_z_homotopy, koszul_z_s0,
                                    multiplication_map, pair_group,
                                    periodic_boundary,
                                    periodic_diagonal_components, periodic_s0)


def pair_elem(n, ring, i, j, c=1):
    pg = pair_group(cyclic(n))
    return GroupRingElement.monomial(pg, ring, pg.make((), (i, j))).scale(c)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_periodic_boundary_squares_to_zero(n):
    ring = ZZ
    for degree in (2, 3, 4):
        for i in range(n):
            for j in range(n):
                x = pair_elem(n, ring, i, j)
                dd = periodic_boundary(n, ring, degree - 1,
                                       periodic_boundary(n, ring, degree, x))
                assert dd.is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_periodic_homotopy_identity(n):
    """d s + s d = id in positive degree; mu s_0 = id in degree 0."""
    ring = ZZ
    g = cyclic(n)
    for i in range(n):
        a = GroupRingElement.monomial(g, ring, g.make((), (i,)))
        assert multiplication_map(g, periodic_s0(n, ring, a)) == a
    for degree in (1, 2, 3):
        for i in range(n):
            for j in range(n):
                x = pair_elem(n, ring, i, j)
                term1 = periodic_boundary(
                    n, ring, degree + 1, contracting_homotopy(n, ring, degree, x))
                term2 = contracting_homotopy(
                    n, ring, degree - 1, periodic_boundary(n, ring, degree, x))
                assert term1 + term2 == x


def test_koszul_z_homotopy_identity():
    ring = ZZ
    pg = pair_group(infinite_cyclic())
    for i in range(-3, 4):
        for j in range(-3, 4):
            x = GroupRingElement.monomial(pg, ring, pg.make((i, j), ()))
            # d_1 s_1 + s_0-route = id on P_0
            lhs = koszul_z_boundary(ring, koszul_z_homotopy(ring, x)) \
                + koszul_z_s0(ring, multiplication_map(infinite_cyclic(), x))
            assert lhs == x


@pytest.mark.parametrize("n", [2, 3, 4])
def test_periodic_diagonal_counit(n):
    ring = ZZ
    comps = periodic_diagonal_components(n, ring, 0)
    one = GroupRingElement.one(cyclic(n), ring)
    assert counit_check(cyclic(n), comps, one)


@pytest.mark.parametrize("n", [2, 3])
def test_periodic_diagonal_bidegrees(n):
    ring = ZZ
    for degree in (1, 2, 3):
        comps = periodic_diagonal_components(n, ring, degree)
        assert comps
        for (i, j) in comps:
            assert i + j == degree
            assert i >= 0 and j >= 0


def test_koszul_diagonal_counit():
    ring = ZZ
    g = infinite_cyclic()
    pg = pair_group(g)
    x = GroupRingElement.monomial(pg, ring, pg.make((2, -1), ()))
    comps = diagonal("KoszulZ", ring, 0, x)
    assert counit_check(g, comps, multiplication_map(g, x))
