"""Comparison maps between the small resolutions and the normalized bar
resolution: the cyclic-group maps psi/phi in closed form and by the
contracting-homotopy recursion, their induced chain/cochain maps, and the
degree <= 1 maps for the infinite cyclic group.

Conventions: A = R[Z/n] with generator sigma; bar chains carry the module
coefficient in the last slot; cochain compression lands in A via the
identification Hom(A^2, A) = A.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Dict, List, Tuple

from .coeff import CoeffRing, RawValue
from .group_ring import (GroupDescriptor, GroupElement, GroupRingElement, cyclic,
                         infinite_cyclic)
from .bar_complex import BarChain, BarCochainTable, cup_bar

# -- cochain-induced maps for Z/n ----------------------------------------


def _sigma_elt(n: int, i: int) -> GroupElement:
    return GroupElement((), (i % n,))


def _sigma_mono(group, ring, i: int) -> GroupRingElement:
    return GroupRingElement.monomial(group, ring, _sigma_elt(group.torsion_orders[0], i))


def _exp(g: GroupElement) -> int:
    return g.torsion[0]


def phi_cochain(n: int, ring: CoeffRing, degree: int, a: GroupRingElement) -> BarCochainTable:
    """phi*_r(a): the closed-form bar cochain table representing a small
    cochain value a in degree r."""
    group = cyclic(n)
    r, odd = divmod(degree, 2)

    def fn(slots: Tuple[GroupElement, ...]) -> GroupRingElement:
        exps = [_exp(g) for g in slots]
        if odd:
            for k in range(1, r + 1):
                if exps[2 * k - 1] + exps[2 * k] < n:
                    return GroupRingElement.zero(group, ring)
            sign = -1 if (r + 1) % 2 else 1
            coeff = sign * exps[0]
            shift = sum(exps) - r * n - 1
        else:
            for k in range(1, r + 1):
                if exps[2 * k - 2] + exps[2 * k - 1] < n:
                    return GroupRingElement.zero(group, ring)
            coeff = -1 if r % 2 else 1
            shift = sum(exps) - r * n
        return (a * _sigma_mono(group, ring, shift)).scale(coeff)

    return BarCochainTable.from_function(group, ring, degree, fn)


def psi_cochain(n: int, ring: CoeffRing, f: BarCochainTable) -> GroupRingElement:
    """psi*_r(f): compress a bar cochain table to a small cochain value."""
    group = cyclic(n)
    degree = f.degree
    r, odd = divmod(degree, 2)
    sigma = _sigma_elt(n, 1)
    total = GroupRingElement.zero(group, ring)
    sign = (-1 if (r + 1) % 2 else 1) if odd else (-1 if r % 2 else 1)
    for idx in iproduct(range(n), repeat=r):
        if odd:
            slots = (sigma,)
            for i in idx:
                slots = slots + (_sigma_elt(n, i), sigma)
        else:
            slots = ()
            for i in idx:
                slots = slots + (_sigma_elt(n, i), sigma)
        val = f.value(slots)
        if val.is_zero():
            continue
        total = total + (val * _sigma_mono(group, ring, r * (n - 1) - sum(idx))).scale(sign)
    return total


# -- chain-induced maps for Z/n ------------------------------------------


def psi_chain(n: int, ring: CoeffRing, degree: int, a: GroupRingElement) -> BarChain:
    """psi_r(a): a in A to a degree-r normalized bar chain (module slot last)."""
    group = cyclic(n)
    r, odd = divmod(degree, 2)
    sigma = _sigma_elt(n, 1)
    out = BarChain.zero(group, ring, degree)
    sign = (-1 if (r + 1) % 2 else 1) if odd else (-1 if r % 2 else 1)
    for idx in iproduct(range(n), repeat=r):
        if odd:
            slots = (sigma,)
        else:
            slots = ()
        for i in idx:
            slots = slots + (_sigma_elt(n, i), sigma)
        mod = _sigma_mono(group, ring, r * (n - 1) - sum(idx)) * a
        for g, v in mod.support.items():
            out.add_term(slots, g, ring.mul(sign, v))
    return out


def phi_chain(n: int, ring: CoeffRing, c: BarChain) -> GroupRingElement:
    """phi_r applied to a normalized bar chain, landing in A."""
    group = cyclic(n)
    degree = c.degree
    r, odd = divmod(degree, 2)
    total = GroupRingElement.zero(group, ring)
    for (slots, mod), v in c.terms.items():
        exps = [_exp(g) for g in slots]
        if odd:
            ok = all(exps[2 * k + 1] + exps[2 * k + 2] >= n for k in range(r))
            if not ok:
                continue
            sign = -1 if (r + 1) % 2 else 1
            coeff = sign * exps[0] if exps else sign
            shift = sum(exps) - r * n - 1
        else:
            ok = all(exps[2 * k] + exps[2 * k + 1] >= n for k in range(r))
            if not ok:
                continue
            coeff = -1 if r % 2 else 1
            shift = sum(exps) - r * n
        term = GroupRingElement.monomial(group, ring, group.mul(mod, _sigma_elt(n, shift)))
        total = total + term.scale(ring.mul(v, coeff))
    return total


# -- resolution-level psi: closed form versus the recursion ---------------

TwoSided = Dict[Tuple[GroupElement, Tuple[GroupElement, ...], GroupElement], RawValue]


def _ts_add(ring: CoeffRing, acc: TwoSided, key, coeff: RawValue):
    a0, slots, alast = key
    if any(g.is_identity() for g in slots):
        return
    w = ring.add(acc.get(key, ring.zero), coeff)
    if w == ring.zero:
        acc.pop(key, None)
    else:
        acc[key] = w


def psi_resolution_closed(n: int, ring: CoeffRing, degree: int) -> TwoSided:
    """The closed-form psi_r(1⊗1) in the normalized two-sided bar resolution."""
    group = cyclic(n)
    r, odd = divmod(degree, 2)
    sigma = _sigma_elt(n, 1)
    ident = group.identity()
    out: TwoSided = {}
    sign = (-1 if (r + 1) % 2 else 1) if odd else (-1 if r % 2 else 1)
    for idx in iproduct(range(n), repeat=r):
        slots = (sigma,) if odd else ()
        for i in idx:
            slots = slots + (_sigma_elt(n, i), sigma)
        last = _sigma_elt(n, r * (n - 1) - sum(idx))
        _ts_add(ring, out, (ident, slots, last), sign)
    return out


def psi_resolution_recursive(n: int, ring: CoeffRing, degree: int) -> TwoSided:
    """psi via psi_{r+1}(1⊗1) = s_r psi_r d_{r+1}(1⊗1) with the extra
    degeneracy s(a_0 ⊗ x ⊗ a_last) = 1 ⊗ a_0 ⊗ x ⊗ a_last."""
    group = cyclic(n)
    ident = group.identity()
    cur: TwoSided = {(ident, (), ident): ring.one}
    for r1 in range(1, degree + 1):
        # d_{r1}(1⊗1) as an element of A⊗A
        if r1 % 2 == 1:
            dval = [(ident, _sigma_elt(n, 1), 1), (_sigma_elt(n, 1), ident, -1)]
        else:
            dval = [(_sigma_elt(n, i), _sigma_elt(n, n - i - 1), 1) for i in range(n)]
        nxt: TwoSided = {}
        for (u, v, c) in dval:
            for (a0, slots, alast), w in cur.items():
                # A^e-linearity then the extra degeneracy
                new_a0 = group.mul(u, a0)
                new_last = group.mul(alast, v)
                if new_a0.is_identity():
                    continue  # degenerate after s
                _ts_add(ring, nxt, (ident, (new_a0,) + slots, new_last),
                        ring.mul(ring.reduce(c), w))
        cur = nxt
    return cur


def psi_cochain_via_recursion(n: int, ring: CoeffRing, f: BarCochainTable) -> GroupRingElement:
    """Compression of f through the recursively built psi (ground truth)."""
    group = cyclic(n)
    total = GroupRingElement.zero(group, ring)
    for (a0, slots, alast), w in psi_resolution_recursive(n, ring, f.degree).items():
        val = f.value(slots)
        if val.is_zero():
            continue
        outer = GroupRingElement.monomial(group, ring, group.mul(a0, alast))
        total = total + (outer * val).scale(w)
    return total


# -- resolution-level phi and the synthesized periodic diagonal -----------


def _pair_group(n: int) -> GroupDescriptor:
    return GroupDescriptor(0, (n, n))


def phi_resolution(n: int, ring: CoeffRing, slots: Tuple[GroupElement, ...]) -> GroupRingElement:
    """phi_r(1 ⊗ slots ⊗ 1) as an element of A⊗A (group ring over (Z/n)^2)."""
    pg = _pair_group(n)
    r = len(slots)
    exps = [_exp(g) for g in slots]
    out = GroupRingElement.zero(pg, ring)
    if r == 0:
        return GroupRingElement.one(pg, ring)
    if r % 2 == 0:
        half = r // 2
        if all(exps[2 * k] + exps[2 * k + 1] >= n for k in range(half)):
            sign = -1 if half % 2 else 1
            shift = sum(exps) - half * n
            out = out + GroupRingElement.monomial(pg, ring, pg.make((), (0, shift))).scale(sign)
        return out
    half = (r - 1) // 2
    if not all(exps[2 * k + 1] + exps[2 * k + 2] >= n for k in range(half)):
        return out
    sign = -1 if (half + 1) % 2 else 1
    rest = sum(exps[1:]) - half * n
    for j in range(exps[0]):
        out = out + GroupRingElement.monomial(
            pg, ring, pg.make((), (j, exps[0] - j - 1 + rest))).scale(sign)
    return out


def periodic_diagonal(n: int, ring: CoeffRing, degree: int) -> Dict[Tuple[int, int], GroupRingElement]:
    """Diagonal approximation for the 2-periodic resolution, synthesized as
    (phi ⊗_A phi) ∘ Δ_bar ∘ psi on 1⊗1.  Component (i, j) is an element of
    A⊗A⊗A, encoded as a group ring over (Z/n)^3 via u⊗v ⊗_A u'⊗v' = u⊗vu'⊗v'."""
    tg = GroupDescriptor(0, (n, n, n))
    out: Dict[Tuple[int, int], GroupRingElement] = {}
    for (a0, slots, alast), w in psi_resolution_recursive(n, ring, degree).items():
        r = len(slots)
        for k in range(r + 1):
            left = phi_resolution(n, ring, slots[:k])     # in A⊗A
            right = phi_resolution(n, ring, slots[k:])    # in A⊗A
            # assemble a0*left_u ⊗ left_v*right_u ⊗ right_v*alast
            for gl, cl in left.support.items():
                for gr, cr in right.support.items():
                    u = (_exp(a0) + gl.torsion[0]) % n
                    mid = (gl.torsion[1] + gr.torsion[0]) % n
                    v = (gr.torsion[1] + _exp(alast)) % n
                    key = (k, r - k)
                    cur = out.get(key)
                    term = GroupRingElement.monomial(
                        tg, ring, tg.make((), (u, mid, v))).scale(ring.mul(w, ring.mul(cl, cr)))
                    out[key] = term if cur is None else cur + term
    return {k: v for k, v in out.items() if not v.is_zero()}


def cup_small(n: int, ring: CoeffRing, deg_f: int, a: GroupRingElement,
              deg_g: int, b: GroupRingElement) -> GroupRingElement:
    """Cup product of small-complex cochain values through the bar tables:
    psi*( phi*(a) ⌣ phi*(b) )."""
    f = phi_cochain(n, ring, deg_f, a)
    g = phi_cochain(n, ring, deg_g, b)
    return psi_cochain(n, ring, cup_bar(f, g))


# -- the infinite cyclic group (two-term resolution) ----------------------


def _t_elt(k: int) -> GroupElement:
    return GroupElement((k,), ())


def psi_chain_z(ring: CoeffRing, degree: int, a: GroupRingElement) -> BarChain:
    """Induced chain map for R[Z]: degree 0 identity, degree 1 a ↦ -(t)⊗a."""
    group = infinite_cyclic()
    if degree == 0:
        out = BarChain.zero(group, ring, 0)
        for g, v in a.support.items():
            out.add_term((), g, v)
        return out
    if degree != 1:
        raise ValueError("two-term resolution: degree 0 or 1 only")
    out = BarChain.zero(group, ring, 1)
    for g, v in a.support.items():
        out.add_term((_t_elt(1),), g, ring.neg(v))
    return out


def phi_chain_z(ring: CoeffRing, c: BarChain) -> GroupRingElement:
    """Induced map back: degree 0 identity, degree 1 (t^k)⊗a ↦ -k a t^{k-1}."""
    group = infinite_cyclic()
    if c.degree == 0:
        return c.module_value()
    if c.degree != 1:
        raise ValueError("two-term resolution: degree 0 or 1 only")
    total = GroupRingElement.zero(group, ring)
    for (slots, mod), v in c.terms.items():
        k = slots[0].free[0]
        g = group.mul(mod, _t_elt(k - 1))
        total = total + GroupRingElement.monomial(group, ring, g).scale(ring.mul(v, -k))
    return total


def psi_cochain_z(ring: CoeffRing, f: Callable[[int], GroupRingElement]) -> GroupRingElement:
    """Degree-1 cochain compression for R[Z]: f ↦ -f(t)."""
    return f(1).scale(-1)


def phi_cochain_z(ring: CoeffRing, a: GroupRingElement) -> Callable[[int], GroupRingElement]:
    """Degree-1 cochain expansion for R[Z]: value on t^k is -k a t^{k-1}."""
    group = infinite_cyclic()

    def f(k: int) -> GroupRingElement:
        return (a * GroupRingElement.monomial(group, ring, _t_elt(k - 1))).scale(-k)

    return f
