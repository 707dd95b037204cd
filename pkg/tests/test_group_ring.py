"""Group ring arithmetic: convolution, Frobenius form, parsing."""

import pytest
from hypothesis import given, settings, strategies as st

from hhbv.coeff import ZZ, Zmod
from hhbv.group_ring import (GroupDescriptor, GroupRingElement, cyclic,
                             dual_basis, frobenius_pair, infinite_cyclic,
                             parse_group)


def elements(group, ring, coeffs):
    """Build an element from a list of (free, torsion, coeff)."""
    out = GroupRingElement.zero(group, ring)
    for free, tors, c in coeffs:
        out = out + GroupRingElement.monomial(
            group, ring, group.make(free, tors)).scale(c)
    return out


@st.composite
def cyclic6_elements(draw):
    g = cyclic(6)
    coeffs = draw(st.lists(
        st.tuples(st.integers(0, 5), st.integers(-5, 5)), max_size=4))
    return elements(g, ZZ, [((), (i,), c) for i, c in coeffs])


@settings(max_examples=40)
@given(a=cyclic6_elements(), b=cyclic6_elements(), c=cyclic6_elements())
def test_convolution_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a            # abelian group
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40)
@given(a=cyclic6_elements(), b=cyclic6_elements())
def test_frobenius_symmetry(a, b):
    assert frobenius_pair(a, b).value == frobenius_pair(b, a).value


def test_frobenius_is_identity_coefficient():
    g = cyclic(4)
    a = elements(g, ZZ, [((), (1,), 2), ((), (3,), 5)])
    b = elements(g, ZZ, [((), (3,), 1), ((), (1,), 1)])
    # identity coefficient of a*b: 2*1 (1+3) + 5*1 (3+1)
    assert frobenius_pair(a, b).value == 7


def test_dual_basis_pairs_to_delta():
    g = cyclic(5)
    for x, y in dual_basis(g):
        a = GroupRingElement.monomial(g, ZZ, x)
        b = GroupRingElement.monomial(g, ZZ, y)
        assert frobenius_pair(a, b).value == 1


def test_infinite_cyclic_laurent():
    g = infinite_cyclic()
    t = GroupRingElement.monomial(g, ZZ, g.make((1,), ()))
    tinv = GroupRingElement.monomial(g, ZZ, g.make((-1,), ()))
    assert t * tinv == GroupRingElement.one(g, ZZ)


def test_parse_group():
    assert parse_group("Z/6") == GroupDescriptor(0, (6,))
    assert parse_group("Z^2 x Z/4 x Z/2") == GroupDescriptor(2, (4, 2))
    assert parse_group("Z") == GroupDescriptor(1, ())
    with pytest.raises(ValueError):
        parse_group("D_8")


def test_mixed_ring_rejected():
    g = cyclic(3)
    a = GroupRingElement.one(g, ZZ)
    b = GroupRingElement.one(g, Zmod(3))
    with pytest.raises(Exception):
        a + b
