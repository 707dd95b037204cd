"""Closed-form presentations: branching, rewriting, Δ and bracket tables,
and the two comparison isomorphisms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hhbv.coeff import QQ, ZZ, Zmod
from hhbv.group_ring import parse_group
from hhbv import presentations as P


# -- branch structure ------------------------------------------------------


def test_cyclic_branches():
    assert "y^2 - x^4*z" in P.present_cyclic(Zmod(2), 6).relations
    assert "y^2" in P.present_cyclic(Zmod(2), 4).relations
    assert "y^2" in P.present_cyclic(Zmod(3), 6).relations
    # field with invertible group order: only the group-like generator
    pr = P.present_cyclic(Zmod(3), 4)
    assert [g.name for g in pr.generators] == ["x"]
    with pytest.raises(ValueError):
        P.present_cyclic(Zmod(4), 4)


def test_hypotheses_emitted():
    pr = P.present_cyclic(Zmod(2), 6)
    assert any("m = 3" in h or "m odd" in h for h in pr.hypotheses)
    pr2 = P.present_cyclic(ZZ, 5)
    assert any("integral domain" in h for h in pr2.hypotheses)


def test_tensor_c_squared_branches():
    assert P.present_tensor_Z(4, 2).normalize({(0, 0, 0, 0, 2): 1}) == {}
    assert P.present_tensor_Z(6, 3).normalize({(0, 0, 0, 0, 2): 1}) == {}
    c2 = P.present_tensor_Z(6, 2).normalize({(0, 0, 0, 0, 2): 1})
    assert c2 == {(4, 0, 1, 2, 0): 1, (4, 0, 2, 1, 0): 1}
    with pytest.raises(ValueError):
        P.present_tensor_Z(4, 3)


# -- rewriting -------------------------------------------------------------


def test_normalize_square_rules():
    p6 = P.present_cyclic(Zmod(2), 6)
    assert p6.normalize({(0, 3, 0): 1}) == {(4, 1, 1): 1}
    assert P.present_cyclic(Zmod(2), 4).normalize({(0, 2, 0): 1}) == {}


def test_normalize_torsion_coefficients():
    przz = P.present_cyclic(ZZ, 4)
    assert przz.normalize({(0, 1): 5}) == {(0, 1): 1}
    assert przz.normalize({(0, 1): 4}) == {}
    assert P.present_cyclic(QQ, 4).normalize({(0, 1): Fraction(3)}) == {}
    pt = P.present_tensor_Z(4, 2)
    # a has additive order 4, b and c order 2, mixed terms reduce by the gcd
    assert pt.normalize({(0, 0, 1, 0, 0): 5}) == {(0, 0, 1, 0, 0): 1}
    assert pt.normalize({(0, 0, 1, 1, 0): 3}) == {(0, 0, 1, 1, 0): 1}
    assert pt.normalize({(0, 0, 0, 1, 0): 2}) == {}


def test_normalize_orders_and_laurent():
    p6 = P.present_cyclic(Zmod(2), 6)
    assert p6.normalize({(7, 0, 0): 1}) == {(1, 0, 0): 1}
    fa = P.present_free_abelian(1)
    assert fa.normalize({(-2, 0): 3}) == {(-2, 0): 3}


@settings(max_examples=40)
@given(e1=st.integers(0, 5), e2=st.integers(0, 5), k1=st.integers(0, 2),
       k2=st.integers(0, 2))
def test_multiplication_confluent_sample(e1, e2, k1, k2):
    """(a*b)*c computed in either association gives one normal form."""
    pr = P.present_cyclic(Zmod(2), 6)
    a = {(e1, 1, k1): 1}
    b = {(e2, 1, k2): 1}
    c = {(1, 0, 0): 1}
    lhs = pr.mul(pr.mul(a, b), c)
    rhs = pr.mul(a, pr.mul(b, c))
    assert P.poly_equal(pr, lhs, rhs)


# -- Δ and bracket tables --------------------------------------------------


@pytest.mark.parametrize("n,p", [(4, 2), (6, 2), (6, 3), (5, 5)])
def test_delta_squares_to_zero_on_normal_monomials(n, p):
    pr = P.present_cyclic(Zmod(p), n)
    for mono in pr.monomials_up_to(6):
        assert pr.delta(pr.delta_mono(mono)) == {}


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3), (6, 2)])
def test_tensor_delta_squares_to_zero(n, m):
    pr = P.present_tensor_Z(n, m)
    for mono in pr.monomials_up_to(6):
        assert pr.delta(pr.delta_mono(mono)) == {}


def test_tensor_boxed_deltas():
    for n, m in [(4, 2), (6, 3), (6, 2)]:
        pr = P.present_tensor_Z(n, m)
        k = n // m

        def mono(i=0, j=0, l=0, r=0, s=0, c=1):
            return pr.normalize({(i % n, j % m, l, r, s): c})

        assert P.poly_equal(pr, pr.delta(mono(s=1)), mono(i=n - 1, r=1, c=-1))
        assert pr.delta(mono(i=1, s=1)) == {}
        expect = pr.add(mono(i=n - 1, j=1, r=1, c=-1),
                        mono(i=n - 1, j=1, l=1, c=-k))
        assert P.poly_equal(pr, pr.delta(mono(j=1, s=1)), expect)
        assert P.poly_equal(pr, pr.delta(mono(l=1, s=1)),
                            mono(i=n - 1, l=1, r=1, c=-1))
        assert P.poly_equal(pr, pr.delta(mono(r=1, s=1)),
                            mono(i=n - 1, r=2, c=-1))


def test_cyclic_bracket_closed_form_consistent_with_delta():
    for n, p in [(4, 2), (3, 3)]:
        pr = P.present_cyclic(Zmod(p), n)
        monos = [(1, 0, 1), (0, 1, 0), (1, 1, 1), (2 % n, 1, 0), (0, 0, 1)]
        for m1 in monos:
            for m2 in monos:
                a, b = {m1: 1}, {m2: 1}
                assert P.poly_equal(pr, pr.bracket(a, b),
                                    pr.bracket_via_delta(a, b))


def test_free_abelian_closed_forms():
    fa = P.present_free_abelian(2)
    assert fa.delta_mono((3, 0, 1, 0)) == {(2, 0, 0, 0): 2}
    assert fa.delta_mono((2, 3, 1, 1)) == {(1, 3, 0, 1): 1, (2, 2, 1, 0): -2}
    for mono in fa.monomials_up_to(4, laurent_span=2):
        assert fa.delta(fa.delta_mono(mono)) == {}
    for r in (-2, -1, 1, 2):
        assert fa.bracket({(r, 0, 0, 0): 1}, {(0, 0, 1, 0): 1}) == \
            {(r - 1, 0, 0, 0): -r}
        assert fa.bracket({(r, 0, 0, 0): 1}, {(0, 0, 0, 1): 1}) == {}
    assert fa.bracket({(0, 0, 1, 0): 1}, {(0, 0, 0, 1): 1}) == {}


def test_fg_abelian_dispatch():
    assert P.present_fg_abelian(parse_group("Z/5"), ZZ).label.startswith("cyclic")
    assert P.present_fg_abelian(parse_group("Z^3"), ZZ).label.startswith("free")
    assert P.present_fg_abelian(parse_group("Z/4 x Z/2"), ZZ).label.startswith("tensor")
    mixed = P.present_fg_abelian(parse_group("Z x Z/2"), Zmod(2))
    assert len(mixed.generators) == 5
    with pytest.raises(ValueError):
        P.present_fg_abelian(parse_group("Z x Z/2"), ZZ)
    with pytest.raises(ValueError):
        P.present_fg_abelian(parse_group("Z/4 x Z/3"), ZZ)


def test_fg_abelian_product_delta_squares_to_zero():
    pr = P.present_fg_abelian(parse_group("Z x Z/2"), Zmod(2))
    for mono in pr.monomials_up_to(5, laurent_span=2):
        assert pr.delta(pr.delta_mono(mono)) == {}


# -- parsing and serialization ---------------------------------------------


def test_parse_monomial():
    pr = P.present_cyclic(Zmod(2), 6)
    assert pr.parse_monomial("x^3*y*z^2") == {(3, 1, 2): 1}
    assert pr.parse_monomial("x x y") == {(2, 1, 0): 1}
    assert pr.parse_monomial("1") == {(0, 0, 0): 1}
    fa = P.present_free_abelian(2)
    assert fa.parse_monomial("x1^-2 y2") == {(-2, 0, 0, 1): 1}
    with pytest.raises(ValueError):
        pr.parse_monomial("x^")
    with pytest.raises(ValueError):
        pr.parse_monomial("w^2")


def test_format_poly_round_trip():
    pr = P.present_cyclic(Zmod(2), 6)
    poly = pr.parse_monomial("x^3*y*z^2")
    assert pr.parse_monomial(pr.format_poly(poly)) == poly


def test_serialize_document():
    doc = P.present_cyclic(Zmod(2), 6).serialize(4)
    assert set(doc) >= {"ring", "generators", "relations", "hypotheses",
                        "delta"}
    assert {"name": "y", "degree": 1} in doc["generators"]


# -- comparison isomorphisms -----------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_truncated_poly_iso(p):
    rep = P.truncated_poly_iso(p)
    assert rep.ok, [c for c in rep.checks if not c[1]]


@pytest.mark.parametrize("ring", [ZZ, Zmod(5)])
def test_loop_space_iso(ring):
    rep = P.loop_space_iso(ring)
    assert rep.ok, [c for c in rep.checks if not c[1]]
