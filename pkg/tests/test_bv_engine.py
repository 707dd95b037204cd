"""BV operator and brackets: boxed values, closed forms, route agreement,
the seven-term identity, and the transfer on the integers."""

import pytest
from hypothesis import given, settings, strategies as st

from hhbv.bv_engine import (CyclicMonomial, TensorCochain, ZMonomial,
                            cyclic_bracket_circle, cyclic_bracket_from_delta,
                            cyclic_classes_equal, cyclic_delta_engine,
                            delta_dual_basis, delta_transferred,
                            seven_term_residual, tensor_compressed_equal)
from hhbv.coeff import QQ, ZZ, Zmod
from hhbv.comparison import phi_cochain
from hhbv.group_ring import GroupRingElement, cyclic, infinite_cyclic
from hhbv.verification import (c_representative, tensor_monomial_rep,
                               _poly_to_value, _tensor_poly_to_compressed)
from hhbv.presentations import present_tensor_Z


def sigma(n, ring, exp, c=1):
    g = cyclic(n)
    return GroupRingElement.monomial(g, ring, g.make((), (exp % n,))).scale(
        ring.reduce(c))


CHARP = [(2, 2), (4, 2), (6, 2), (3, 3), (6, 3), (5, 5)]


@pytest.mark.parametrize("n,p", CHARP)
def test_boxed_delta_values(n, p):
    ring = Zmod(p)
    dy = cyclic_delta_engine(n, ring, CyclicMonomial(0, 1, 0))
    assert cyclic_classes_equal(n, ring, 0, dy, sigma(n, ring, n - 1, -1))
    dz = cyclic_delta_engine(n, ring, CyclicMonomial(1, 0, 0))
    assert cyclic_classes_equal(n, ring, 1, dz, sigma(n, ring, 0, 0))
    dzy = cyclic_delta_engine(n, ring, CyclicMonomial(1, 1, 0))
    assert cyclic_classes_equal(n, ring, 2, dzy, sigma(n, ring, n - 1, -1))


@pytest.mark.parametrize("n,p", [(4, 2), (3, 3), (6, 2)])
def test_delta_closed_form_char_p(n, p):
    ring = Zmod(p)
    for k in range(2):
        for l in range(n):
            d = cyclic_delta_engine(n, ring, CyclicMonomial(k, 1, l))
            assert cyclic_classes_equal(n, ring, 2 * k, d,
                                        sigma(n, ring, l - 1, l - 1))


@pytest.mark.parametrize("ring", [ZZ, QQ])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_delta_vanishes_integral_domain(ring, n):
    zero = GroupRingElement.zero(cyclic(n), ring)
    for k in range(1, 3):
        for l in range(n):
            d = cyclic_delta_engine(n, ring, CyclicMonomial(k, 0, l))
            assert cyclic_classes_equal(n, ring, 2 * k - 1, d, zero)


def closed_bracket(n, ring, m1, m2):
    if m1.eps == 0 and m2.eps == 0:
        return GroupRingElement.zero(cyclic(n), ring)
    if m1.eps == 0:
        return sigma(n, ring, m1.l + m2.l - 1, -m1.l)
    if m2.eps == 0:
        return sigma(n, ring, m1.l + m2.l - 1, m2.l)
    return sigma(n, ring, m1.l + m2.l - 1, m2.l - m1.l)


@pytest.mark.parametrize("n,p", [(3, 3), (4, 2)])
def test_bracket_routes_agree(n, p):
    ring = Zmod(p)
    monos = [CyclicMonomial(0, 1, 0), CyclicMonomial(0, 1, 1),
             CyclicMonomial(1, 0, 1), CyclicMonomial(1, 1, 0)]
    for m1 in monos:
        for m2 in monos:
            deg = m1.degree + m2.degree - 1
            expect = closed_bracket(n, ring, m1, m2)
            circ = cyclic_bracket_circle(n, ring, m1, m2)
            via = cyclic_bracket_from_delta(n, ring, m1, m2)
            assert cyclic_classes_equal(n, ring, deg, circ, expect)
            assert cyclic_classes_equal(n, ring, deg, via, expect)


@pytest.mark.parametrize("n,p", [(3, 3), (4, 2)])
def test_seven_term_identity(n, p):
    ring = Zmod(p)
    gens = [CyclicMonomial(0, 0, 1), CyclicMonomial(0, 1, 0),
            CyclicMonomial(1, 0, 0)]
    for a in gens:
        for b in gens:
            for c in gens:
                ok, residual = seven_term_residual(n, ring, a, b, c)
                assert ok, residual


@settings(max_examples=30, deadline=None)
@given(u=st.sampled_from([1, -1]), k=st.integers(-2, 2), i=st.integers(-3, 3))
def test_transfer_closed_form(u, k, i):
    g = infinite_cyclic()
    for ring in (ZZ, Zmod(5)):
        _, val = delta_transferred(ring, u, k, ZMonomial(1, i))
        expect = GroupRingElement.monomial(g, ring, g.make((i - 1,), ())).scale(
            ring.reduce(i + k))
        assert val == expect
        _, val0 = delta_transferred(ring, u, k, ZMonomial(0, i))
        assert val0.is_zero()


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3)])
def test_tensor_boxed_values(n, m):
    ring = ZZ
    pr = present_tensor_Z(n, m)
    for mono in [(0, 0, 0, 0, 1), (1, 0, 0, 0, 1), (0, 1, 0, 0, 1)]:
        rep = tensor_monomial_rep(n, m, ring, *mono)
        dm = rep.delta().compress()
        expect = _tensor_poly_to_compressed(n, m, ring, pr.delta_mono(mono))
        assert tensor_compressed_equal(n, m, ring, pr.degree(mono) - 1,
                                       dm, expect)


def test_dual_basis_delta_squares_to_zero():
    """Δ∘Δ = 0 on representative tables (class level)."""
    for n, p in [(2, 2), (3, 3)]:
        ring = Zmod(p)
        for degree in (1, 2, 3):
            for i in range(n):
                f = phi_cochain(n, ring, degree, sigma(n, ring, i))
                if degree < 2:
                    continue
                dd = delta_dual_basis(delta_dual_basis(f))
                from hhbv.comparison import psi_cochain
                val = psi_cochain(n, ring, dd)
                assert cyclic_classes_equal(
                    n, ring, degree - 2, val,
                    GroupRingElement.zero(cyclic(n), ring))
