"""Normalized bar (co)chains: differentials, Connes operator, cup product,
shuffles, tensor operators."""

from itertools import product as iproduct

from hypothesis import given, settings, strategies as st

from hhbv.bar_complex import (BarChain, BarCochainTable, aw_map, connes_B,
                              cochain_differential, cup_bar, ez_map,
                              gerstenhaber_bracket, hochschild_boundary,
                              shuffles, tensor_connes)
from hhbv.coeff import ZZ, Zmod
from hhbv.group_ring import GroupRingElement, cyclic


def nonidentity(group):
    return [g for g in group.elements() if not g.is_identity()]


@st.composite
def bar_chains(draw, n=4, max_degree=3):
    group = cyclic(n)
    degree = draw(st.integers(1, max_degree))
    els = nonidentity(group)
    out = BarChain.zero(group, ZZ, degree)
    for _ in range(draw(st.integers(1, 3))):
        slots = tuple(draw(st.sampled_from(els)) for _ in range(degree))
        mod = draw(st.sampled_from(list(group.elements())))
        out.add_term(slots, mod, draw(st.integers(-3, 3)))
    return out


@settings(max_examples=30, deadline=None)
@given(c=bar_chains())
def test_boundary_squares_to_zero(c):
    if c.degree >= 2:
        assert hochschild_boundary(hochschild_boundary(c)).terms == {}


@settings(max_examples=30, deadline=None)
@given(c=bar_chains())
def test_connes_squares_to_zero(c):
    assert connes_B(connes_B(c)).terms == {}


@settings(max_examples=20, deadline=None)
@given(c=bar_chains(max_degree=2))
def test_connes_boundary_anticommute(c):
    """b B + B b = 0 on normalized chains."""
    lhs = hochschild_boundary(connes_B(c))
    rhs = connes_B(hochschild_boundary(c)) if c.degree >= 1 else None
    total = dict(lhs.terms)
    for k, v in rhs.terms.items():
        total[k] = total.get(k, 0) + v
    assert all(v == 0 for v in total.values())


@st.composite
def cochain_tables(draw, n=3, max_degree=2):
    group = cyclic(n)
    degree = draw(st.integers(0, max_degree))
    els = list(group.elements())

    entries = {}
    for slots in BarCochainTable.basis_tuples(group, degree):
        coeffs = draw(st.lists(
            st.tuples(st.sampled_from(els), st.integers(-2, 2)),
            max_size=2))
        val = GroupRingElement.zero(group, ZZ)
        for g, c in coeffs:
            val = val + GroupRingElement.monomial(group, ZZ, g).scale(c)
        entries[slots] = val
    return BarCochainTable(group, ZZ, degree, entries)


@settings(max_examples=15, deadline=None)
@given(f=cochain_tables())
def test_cochain_differential_squares_to_zero(f):
    df = cochain_differential(f)
    ddf = cochain_differential(df)
    for slots in BarCochainTable.basis_tuples(f.group, f.degree + 2):
        assert ddf.value(slots).is_zero()


@settings(max_examples=10, deadline=None)
@given(f=cochain_tables(max_degree=1), g=cochain_tables(max_degree=1),
       h=cochain_tables(max_degree=1))
def test_cup_associative(f, g, h):
    lhs = cup_bar(cup_bar(f, g), h)
    rhs = cup_bar(f, cup_bar(g, h))
    for slots in BarCochainTable.basis_tuples(f.group, lhs.degree):
        assert lhs.value(slots) == rhs.value(slots)


@settings(max_examples=10, deadline=None)
@given(f=cochain_tables(max_degree=1), g=cochain_tables(max_degree=1))
def test_cup_leibniz(f, g):
    """δ(f ⌣ g) = δf ⌣ g + (-1)^{|f|} f ⌣ δg."""
    lhs = cochain_differential(cup_bar(f, g))
    sign = -1 if f.degree % 2 else 1
    rhs = cup_bar(cochain_differential(f), g) \
        + cup_bar(f, cochain_differential(g)).scale(sign)
    for slots in BarCochainTable.basis_tuples(f.group, lhs.degree):
        assert lhs.value(slots) == rhs.value(slots)


def test_shuffle_count_and_signs():
    sh = list(shuffles(2, 2))
    assert len(sh) == 6
    assert sorted(s.sign for s in sh).count(-1) == 2  # two odd (2,2)-shuffles
    # interleavings are monotone in both arguments
    first = ("a1", "a2")
    second = ("b1", "b2")
    for s in sh:
        word = s.interleave(first, second)
        assert [w for w in word if w.startswith("a")] == list(first)
        assert [w for w in word if w.startswith("b")] == list(second)


def test_bracket_graded_antisymmetry():
    group = cyclic(3)
    ring = Zmod(3)
    els = nonidentity(group)

    def table(degree, seed):
        entries = {}
        for i, slots in enumerate(BarCochainTable.basis_tuples(group, degree)):
            g = els[(i + seed) % len(els)]
            entries[slots] = GroupRingElement.monomial(group, ring, g)
        return BarCochainTable(group, ring, degree, entries)

    for d1, d2 in [(1, 1), (1, 2), (2, 2)]:
        f, g = table(d1, 0), table(d2, 1)
        lhs = gerstenhaber_bracket(f, g)
        rhs = gerstenhaber_bracket(g, f)
        sign = -1 if ((d1 - 1) * (d2 - 1)) % 2 == 0 else 1
        # {f,g} = -(-1)^{(|f|-1)(|g|-1)} {g,f}
        for slots in BarCochainTable.basis_tuples(group, d1 + d2 - 1):
            assert lhs.value(slots) == rhs.value(slots).scale(sign)


def test_aw_ez_identity_on_tensor_chains():
    from hhbv.bar_complex import TensorChain
    ga, gb = cyclic(2), cyclic(2)
    els_a, els_b = nonidentity(ga), nonidentity(gb)
    for p, q in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]:
        for slots_a in iproduct(els_a, repeat=p):
            for slots_b in iproduct(els_b, repeat=q):
                for mod_a in ga.elements():
                    for mod_b in gb.elements():
                        t = TensorChain(ga, gb, ZZ, {
                            ((slots_a, mod_a), (slots_b, mod_b)): 1})
                        assert aw_map(ez_map(t), ga, gb).terms == t.terms
