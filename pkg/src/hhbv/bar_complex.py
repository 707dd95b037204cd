"""The normalized bar complex of R[G].

Chains in degree d are finite R-linear combinations of
(g_1, ..., g_d) ⊗ g  with every g_i a non-identity group element and the
module coefficient g in the LAST slot.  Any face or insertion that puts the
identity into a bar slot is dropped (normalization).

Cochains are dense value tables on all tuples of non-identity elements
(finite groups only), with values in the group ring.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .coeff import CoeffRing, RawValue, RingMismatchError
from .group_ring import GroupDescriptor, GroupElement, GroupRingElement

BarKey = Tuple[Tuple[GroupElement, ...], GroupElement]


class BarChain:
    """Element of the degree-d normalized bar complex of R[G]."""

    __slots__ = ("group", "ring", "degree", "terms")

    def __init__(self, group: GroupDescriptor, ring: CoeffRing, degree: int,
                 terms: Optional[Dict[BarKey, RawValue]] = None):
        self.group = group
        self.ring = ring
        self.degree = degree
        clean: Dict[BarKey, RawValue] = {}
        for (slots, mod), v in (terms or {}).items():
            if len(slots) != degree:
                raise ValueError("slot count != degree")
            if any(g.is_identity() for g in slots):
                continue
            v = ring.reduce(v)
            if v != ring.zero:
                clean[(slots, mod)] = v
        self.terms = clean

    @staticmethod
    def zero(group, ring, degree) -> "BarChain":
        return BarChain(group, ring, degree)

    @staticmethod
    def single(group, ring, slots: Iterable[GroupElement], mod: GroupElement,
               coeff: RawValue = 1) -> "BarChain":
        slots = tuple(slots)
        return BarChain(group, ring, len(slots), {(slots, mod): coeff})

    def _check(self, other: "BarChain"):
        if (self.group, self.ring, self.degree) != (other.group, other.ring, other.degree):
            raise RingMismatchError("bar chain mismatch")

    def __add__(self, other: "BarChain") -> "BarChain":
        self._check(other)
        out = dict(self.terms)
        ring = self.ring
        for k, v in other.terms.items():
            w = ring.add(out.get(k, ring.zero), v)
            if w == ring.zero:
                out.pop(k, None)
            else:
                out[k] = w
        return BarChain(self.group, ring, self.degree, out)

    def __neg__(self) -> "BarChain":
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RawValue) -> "BarChain":
        ring = self.ring
        c = ring.reduce(c)
        return BarChain(self.group, ring, self.degree,
                        {k: ring.mul(v, c) for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, BarChain) and self.group == other.group
                and self.ring == other.ring and self.degree == other.degree
                and self.terms == other.terms)

    def add_term(self, slots: Tuple[GroupElement, ...], mod: GroupElement,
                 coeff: RawValue) -> None:
        """In-place accumulation helper (used only during construction)."""
        if any(g.is_identity() for g in slots):
            return
        ring = self.ring
        k = (slots, mod)
        w = ring.add(self.terms.get(k, ring.zero), coeff)
        if w == ring.zero:
            self.terms.pop(k, None)
        else:
            self.terms[k] = w

    def module_value(self) -> GroupRingElement:
        """Degree-0 chain as a group ring element."""
        if self.degree != 0:
            raise ValueError("degree 0 only")
        return GroupRingElement(self.group, self.ring,
                                {mod: v for (_, mod), v in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (slots, mod), v in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            word = " ⊗ ".join(str(GroupRingElement.monomial(self.group, self.ring, g))
                              for g in slots + (mod,))
            bits.append(f"{v}·[{word}]")
        return " + ".join(bits)


def chain_from_element(a: GroupRingElement, degree: int = 0,
                       slots: Tuple[GroupElement, ...] = ()) -> BarChain:
    """a in A as a degree-0 chain, or (slots)⊗a in higher degree."""
    out = BarChain.zero(a.group, a.ring, degree)
    for g, v in a.support.items():
        out.add_term(slots, g, v)
    return out


def hochschild_boundary(c: BarChain) -> BarChain:
    """The Hochschild differential b on normalized chains (module slot last)."""
    if c.degree < 1:
        raise ValueError("degree >= 1 required")
    grp, ring = c.group, c.ring
    n = c.degree
    out = BarChain.zero(grp, ring, n - 1)
    for (slots, mod), v in c.terms.items():
        out.add_term(slots[1:], grp.mul(mod, slots[0]), v)
        sign = 1
        for i in range(1, n):
            sign = -sign
            merged = slots[:i - 1] + (grp.mul(slots[i - 1], slots[i]),) + slots[i + 1:]
            out.add_term(merged, mod, ring.mul(sign, v))
        last_sign = 1 if n % 2 == 0 else -1
        out.add_term(slots[:-1], grp.mul(slots[-1], mod), ring.mul(last_sign, v))
    return out


def connes_B(c: BarChain) -> BarChain:
    """Connes operator on normalized chains: degree n -> n+1, final module
    coefficient 1, cyclic rotations with signs (-1)^{i n}."""
    grp, ring = c.group, c.ring
    n = c.degree
    ident = grp.identity()
    out = BarChain.zero(grp, ring, n + 1)
    for (slots, mod), v in c.terms.items():
        out.add_term((mod,) + slots, ident, v)
        for i in range(1, n + 1):
            sign = -1 if (i * n) % 2 else 1
            rotated = slots[i - 1:] + (mod,) + slots[:i - 1]
            out.add_term(rotated, ident, ring.mul(sign, v))
    return out


class BarCochainTable:
    """Normalized bar cochain of a finite group ring: a dense table on all
    d-tuples of non-identity group elements, values in the group ring."""

    __slots__ = ("group", "ring", "degree", "entries")

    def __init__(self, group: GroupDescriptor, ring: CoeffRing, degree: int,
                 entries: Optional[Dict[Tuple[GroupElement, ...], GroupRingElement]] = None):
        if not group.is_finite:
            raise ValueError("cochain tables require a finite group")
        self.group = group
        self.ring = ring
        self.degree = degree
        clean = {}
        for slots, val in (entries or {}).items():
            if len(slots) != degree:
                raise ValueError("slot count != degree")
            if any(g.is_identity() for g in slots):
                raise ValueError("normalized tables index non-identity tuples only")
            if not val.is_zero():
                clean[slots] = val
        self.entries = clean

    @staticmethod
    def basis_tuples(group: GroupDescriptor, degree: int):
        gens = [g for g in group.elements() if not g.is_identity()]
        return product(gens, repeat=degree)

    @classmethod
    def from_function(cls, group, ring, degree,
                      fn: Callable[[Tuple[GroupElement, ...]], GroupRingElement]):
        return cls(group, ring, degree,
                   {t: fn(t) for t in cls.basis_tuples(group, degree)})

    @staticmethod
    def zero(group, ring, degree) -> "BarCochainTable":
        return BarCochainTable(group, ring, degree)

    @staticmethod
    def constant(group, ring, value: GroupRingElement) -> "BarCochainTable":
        """Degree-0 cochain with the given value."""
        return BarCochainTable(group, ring, 0, {(): value})

    def value(self, slots: Tuple[GroupElement, ...]) -> GroupRingElement:
        if any(g.is_identity() for g in slots):
            return GroupRingElement.zero(self.group, self.ring)
        return self.entries.get(slots, GroupRingElement.zero(self.group, self.ring))

    def __call__(self, *slots: GroupElement) -> GroupRingElement:
        return self.value(tuple(slots))

    def _check(self, other: "BarCochainTable"):
        if (self.group, self.ring, self.degree) != (other.group, other.ring, other.degree):
            raise RingMismatchError("cochain mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return BarCochainTable(self.group, self.ring, self.degree, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RawValue) -> "BarCochainTable":
        return BarCochainTable(self.group, self.ring, self.degree,
                               {k: v.scale(c) for k, v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, BarCochainTable) and self.group == other.group
                and self.ring == other.ring and self.degree == other.degree
                and self.entries == other.entries)

    def eval_multilinear(self, args: List[GroupRingElement]) -> GroupRingElement:
        """Evaluate on arbitrary algebra elements by multilinear expansion;
        identity components die by normalization."""
        total = GroupRingElement.zero(self.group, self.ring)
        ring = self.ring

        def rec(i: int, slots: Tuple[GroupElement, ...], coeff: RawValue):
            nonlocal total
            if i == len(args):
                total = total + self.value(slots).scale(coeff)
                return
            for g, v in args[i].support.items():
                if g.is_identity():
                    continue
                rec(i + 1, slots + (g,), ring.mul(coeff, v))

        rec(0, (), ring.one)
        return total


def _check_same_algebra(f: BarCochainTable, g: BarCochainTable):
    if f.group != g.group or f.ring != g.ring:
        raise RingMismatchError("cochain algebra mismatch")


def cup_bar(f: BarCochainTable, g: BarCochainTable) -> BarCochainTable:
    """(f ⌣ g)(a_1..a_{k+j}) = f(a_1..a_k) · g(a_{k+1}..a_{k+j})."""
    _check_same_algebra(f, g)
    k = f.degree
    return BarCochainTable.from_function(
        f.group, f.ring, k + g.degree,
        lambda t: f.value(t[:k]) * g.value(t[k:]))


def cochain_differential(f: BarCochainTable) -> BarCochainTable:
    """Hochschild cochain differential δ (degree +1)."""
    grp, ring = f.group, f.ring
    k = f.degree

    def fn(t):
        out = GroupRingElement.monomial(grp, ring, t[0]) * f.value(t[1:])
        sign = 1
        for i in range(1, k + 1):
            sign = -sign
            merged = t[:i - 1] + (grp.mul(t[i - 1], t[i]),) + t[i + 1:]
            out = out + f.value(merged).scale(sign)
        last = 1 if (k + 1) % 2 == 0 else -1
        out = out + (f.value(t[:k]) * GroupRingElement.monomial(grp, ring, t[k])).scale(last)
        return out

    return BarCochainTable.from_function(grp, ring, k + 1, fn)


def circle_product(f: BarCochainTable, g: BarCochainTable) -> BarCochainTable:
    """Gerstenhaber circle product f∘g, degree |f|+|g|-1."""
    _check_same_algebra(f, g)
    grp, ring = f.group, f.ring
    k, j = f.degree, g.degree
    if k == 0:
        return BarCochainTable.zero(grp, ring, max(j - 1, 0))

    def fn(t):
        out = GroupRingElement.zero(grp, ring)
        for i in range(1, k + 1):
            sign = -1 if ((j - 1) * (i - 1)) % 2 else 1
            inserted = g.value(t[i - 1:i - 1 + j])
            for h, v in inserted.support.items():
                if h.is_identity():
                    continue
                slots = t[:i - 1] + (h,) + t[i - 1 + j:]
                out = out + f.value(slots).scale(ring.mul(sign, v))
        return out

    return BarCochainTable.from_function(grp, ring, k + j - 1, fn)


def gerstenhaber_bracket(f: BarCochainTable, g: BarCochainTable) -> BarCochainTable:
    """{f, g} = (-1)^{(|f|-1)(|g|-1)} g∘f - f∘g.

    The overall sign is chosen so that on cohomology the bracket is the
    obstruction to the dual-basis Δ being a derivation of the cup product:
    {f,g} = -(-1)^{|f|}(Δ(f⌣g) - Δ(f)⌣g - (-1)^{|f|} f⌣Δ(g))."""
    sign = -1 if ((f.degree - 1) * (g.degree - 1)) % 2 else 1
    return circle_product(g, f).scale(sign) - circle_product(f, g)


def action_bar(c: BarChain, f: BarCochainTable) -> BarChain:
    """(a_1..a_n ⊗ a) · f = (-1)^{nm} (a_{m+1}..a_n) ⊗ a·f(a_1..a_m)."""
    n, m = c.degree, f.degree
    if n < m:
        raise ValueError("chain degree below cochain degree")
    grp, ring = c.group, c.ring
    sign = -1 if (n * m) % 2 else 1
    out = BarChain.zero(grp, ring, n - m)
    for (slots, mod), v in c.terms.items():
        val = f.value(slots[:m])
        for h, w in val.support.items():
            out.add_term(slots[m:], grp.mul(mod, h), ring.mul(ring.mul(sign, v), w))
    return out


# -- shuffles and the AW / EZ maps for tensor products of group rings -----


class Shuffle:
    """A (p,q)-shuffle: positions of the first block, with inversion sign."""

    __slots__ = ("p", "q", "first_positions", "sign")

    def __init__(self, p: int, q: int, first_positions: Tuple[int, ...]):
        self.p = p
        self.q = q
        self.first_positions = first_positions
        second = tuple(i for i in range(p + q) if i not in first_positions)
        inv = 0
        for a in first_positions:
            for b in second:
                if b < a:
                    inv += 1
        self.sign = -1 if inv % 2 else 1

    def interleave(self, first: tuple, second: tuple) -> tuple:
        out: List = [None] * (self.p + self.q)
        for x, pos in zip(first, self.first_positions):
            out[pos] = x
        it = iter(second)
        for i in range(self.p + self.q):
            if out[i] is None:
                out[i] = next(it)
        return tuple(out)


def shuffles(p: int, q: int) -> List[Shuffle]:
    return [Shuffle(p, q, pos) for pos in combinations(range(p + q), p)]


def product_descriptor(ga: GroupDescriptor, gb: GroupDescriptor) -> GroupDescriptor:
    """Descriptor of G_A ⊕ G_B with A components first."""
    return GroupDescriptor(ga.free_rank + gb.free_rank,
                           ga.torsion_orders + gb.torsion_orders)


def split_element(g: GroupElement, ga: GroupDescriptor,
                  gb: GroupDescriptor) -> Tuple[GroupElement, GroupElement]:
    fa, ta = ga.free_rank, len(ga.torsion_orders)
    return (GroupElement(g.free[:fa], g.torsion[:ta]),
            GroupElement(g.free[fa:], g.torsion[ta:]))


def join_elements(a: GroupElement, b: GroupElement) -> GroupElement:
    return GroupElement(a.free + b.free, a.torsion + b.torsion)


def embed_element(a: GroupElement, side: str, ga: GroupDescriptor,
                  gb: GroupDescriptor) -> GroupElement:
    if side == "A":
        return join_elements(a, gb.identity())
    return join_elements(ga.identity(), a)


class TensorChain:
    """Sum of (bar chain of A) ⊗ (bar chain of B) basis terms, with the
    module coefficients carried per factor."""

    __slots__ = ("ga", "gb", "ring", "terms")

    def __init__(self, ga: GroupDescriptor, gb: GroupDescriptor, ring: CoeffRing,
                 terms: Optional[Dict[Tuple[BarKey, BarKey], RawValue]] = None):
        self.ga = ga
        self.gb = gb
        self.ring = ring
        clean: Dict[Tuple[BarKey, BarKey], RawValue] = {}
        for key, v in (terms or {}).items():
            (slots_a, _), (slots_b, _) = key
            if any(g.is_identity() for g in slots_a) or any(g.is_identity() for g in slots_b):
                continue
            v = ring.reduce(v)
            if v != ring.zero:
                clean[key] = v
        self.terms = clean

    def add_term(self, key: Tuple[BarKey, BarKey], coeff: RawValue) -> None:
        (slots_a, _), (slots_b, _) = key
        if any(g.is_identity() for g in slots_a) or any(g.is_identity() for g in slots_b):
            return
        ring = self.ring
        w = ring.add(self.terms.get(key, ring.zero), coeff)
        if w == ring.zero:
            self.terms.pop(key, None)
        else:
            self.terms[key] = w

    def __add__(self, other: "TensorChain") -> "TensorChain":
        out = TensorChain(self.ga, self.gb, self.ring, dict(self.terms))
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: RawValue) -> "TensorChain":
        ring = self.ring
        c = ring.reduce(c)
        return TensorChain(self.ga, self.gb, ring,
                           {k: ring.mul(v, c) for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorChain) and self.ga == other.ga
                and self.gb == other.gb and self.ring == other.ring
                and self.terms == other.terms)


def aw_map(c: BarChain, ga: GroupDescriptor, gb: GroupDescriptor) -> TensorChain:
    """Induced Alexander-Whitney map on module-coefficient bar chains of
    R[G_A ⊕ G_B]: front A-faces times back B-faces with sign (-1)^{k(n-k)}."""
    ring = c.ring
    n = c.degree
    out = TensorChain(ga, gb, ring)
    for (slots, mod), v in c.terms.items():
        parts = [split_element(g, ga, gb) for g in slots]
        mod_a, mod_b = split_element(mod, ga, gb)
        for k in range(n + 1):
            sign = -1 if (k * (n - k)) % 2 else 1
            a_slots = tuple(parts[i][0] for i in range(k, n))
            a_mod = mod_a
            for i in range(k):
                a_mod = ga.mul(a_mod, parts[i][0])
            b_slots = tuple(parts[i][1] for i in range(k))
            b_mod = mod_b
            for i in range(k, n):
                b_mod = gb.mul(b_mod, parts[i][1])
            b_mod_final = b_mod
            out.add_term(((a_slots, a_mod), (b_slots, b_mod_final)),
                         ring.mul(sign, v))
    return out


def ez_map(t: TensorChain) -> BarChain:
    """Induced Eilenberg-Zilber (shuffle) map back into the bar complex of
    R[G_A ⊕ G_B]."""
    ga, gb, ring = t.ga, t.gb, t.ring
    grp = product_descriptor(ga, gb)
    degrees = {len(sa) + len(sb) for (sa, _), (sb, _) in t.terms} or {0}
    if len(degrees) > 1:
        raise ValueError("mixed total degree")
    out = BarChain.zero(grp, ring, degrees.pop())
    for ((slots_a, mod_a), (slots_b, mod_b)), v in t.terms.items():
        p, q = len(slots_a), len(slots_b)
        first = tuple(embed_element(g, "A", ga, gb) for g in slots_a)
        second = tuple(embed_element(g, "B", ga, gb) for g in slots_b)
        mod = join_elements(mod_a, mod_b)
        for sh in shuffles(p, q):
            out.add_term(sh.interleave(first, second), mod, ring.mul(sh.sign, v))
    return out


def tensor_connes(t: TensorChain) -> TensorChain:
    """B ⊗ id + (-1)^{|A-part|} id ⊗ B on tensor chains."""
    ga, gb, ring = t.ga, t.gb, t.ring
    out = TensorChain(ga, gb, ring)
    for (key_a, key_b), v in t.terms.items():
        slots_a, mod_a = key_a
        slots_b, mod_b = key_b
        ca = BarChain(ga, ring, len(slots_a), {key_a: 1})
        for k2, w in connes_B(ca).terms.items():
            out.add_term((k2, key_b), ring.mul(v, w))
        sign = -1 if len(slots_a) % 2 else 1
        cb = BarChain(gb, ring, len(slots_b), {key_b: 1})
        for k2, w in connes_B(cb).terms.items():
            out.add_term((key_a, k2), ring.mul(ring.mul(sign, v), w))
    return out
