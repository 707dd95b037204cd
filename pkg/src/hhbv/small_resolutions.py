"""The explicit small resolutions and their diagonal approximations.

Elements of A⊗A are encoded as group ring elements over the doubled group
G⊕G (the algebra is commutative, so A^e ≅ R[G⊕G] and all differentials are
right multiplications).  Elements of P_i ⊗_A P_j are triples over G⊕G⊕G via
(u⊗w) ⊗_A (1⊗v) = u⊗w⊗v.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .coeff import CoeffRing
from .group_ring import GroupDescriptor, GroupElement, GroupRingElement, cyclic, infinite_cyclic


def pair_group(g: GroupDescriptor) -> GroupDescriptor:
    return GroupDescriptor(2 * g.free_rank, g.torsion_orders * 2)


def triple_group(g: GroupDescriptor) -> GroupDescriptor:
    return GroupDescriptor(3 * g.free_rank, g.torsion_orders * 3)


def pair_element(g: GroupDescriptor, left: GroupElement, right: GroupElement) -> GroupElement:
    return GroupElement(left.free + right.free, left.torsion + right.torsion)


def split_pair(g: GroupDescriptor, e: GroupElement) -> Tuple[GroupElement, GroupElement]:
    r, t = g.free_rank, len(g.torsion_orders)
    return (GroupElement(e.free[:r], e.torsion[:t]), GroupElement(e.free[r:], e.torsion[t:]))


def multiplication_map(g: GroupDescriptor, x: GroupRingElement) -> GroupRingElement:
    """mu: A⊗A -> A, a⊗b -> ab."""
    ring = x.ring
    out = GroupRingElement.zero(g, ring)
    for e, v in x.support.items():
        l, r = split_pair(g, e)
        out = out + GroupRingElement.monomial(g, ring, g.mul(l, r)).scale(v)
    return out


# -- the 2-periodic resolution of R[Z/n] ----------------------------------


def _periodic_d_element(n: int, ring: CoeffRing, degree: int) -> GroupRingElement:
    """The right-multiplier giving d_degree on the 2-periodic resolution."""
    pg = pair_group(cyclic(n))
    if degree % 2 == 1:
        # 1⊗sigma - sigma⊗1
        return (GroupRingElement.monomial(pg, ring, pg.make((), (0, 1)))
                - GroupRingElement.monomial(pg, ring, pg.make((), (1, 0))))
    out = GroupRingElement.zero(pg, ring)
    for i in range(n):
        out = out + GroupRingElement.monomial(pg, ring, pg.make((), (i, n - i - 1)))
    return out


def periodic_boundary(n: int, ring: CoeffRing, degree: int,
                      x: GroupRingElement) -> GroupRingElement:
    """d_degree of the 2-periodic resolution (degree >= 1), acting on A⊗A."""
    if degree < 1:
        raise ValueError("boundary defined for degree >= 1")
    return x * _periodic_d_element(n, ring, degree)


def periodic_s0(n: int, ring: CoeffRing, a: GroupRingElement) -> GroupRingElement:
    """s_0: A -> P_0, sigma^i -> 1⊗sigma^i (a right-module map)."""
    pg = pair_group(cyclic(n))
    out = GroupRingElement.zero(pg, ring)
    for g, v in a.support.items():
        out = out + GroupRingElement.monomial(pg, ring, pg.make((), (0, g.torsion[0]))).scale(v)
    return out


def contracting_homotopy(n: int, ring: CoeffRing, degree: int,
                         x: GroupRingElement) -> GroupRingElement:
    """The right-module homotopy s: P_degree -> P_{degree+1}, defined on
    sigma^i⊗1 and extended by right multiplication."""
    pg = pair_group(cyclic(n))
    into_odd = (degree + 1) % 2 == 1
    out = GroupRingElement.zero(pg, ring)
    for e, v in x.support.items():
        i, j = e.torsion[0], e.torsion[1]
        if into_odd:
            for l in range(i):
                out = out + GroupRingElement.monomial(
                    pg, ring, pg.make((), (l, i - l - 1 + j))).scale(ring.neg(v))
        else:
            if i == n - 1:
                out = out + GroupRingElement.monomial(pg, ring, pg.make((), (0, j))).scale(v)
    return out


# -- the two-term resolution of R[Z] --------------------------------------


def koszul_z_boundary(ring: CoeffRing, x: GroupRingElement) -> GroupRingElement:
    """d_1 = right multiplication by 1⊗t - t⊗1 on A⊗A, A = R[Z]."""
    pg = pair_group(infinite_cyclic())
    d = (GroupRingElement.monomial(pg, ring, pg.make((0, 1), ()))
         - GroupRingElement.monomial(pg, ring, pg.make((1, 0), ())))
    return x * d


def koszul_z_s0(ring: CoeffRing, a: GroupRingElement) -> GroupRingElement:
    pg = pair_group(infinite_cyclic())
    out = GroupRingElement.zero(pg, ring)
    for g, v in a.support.items():
        out = out + GroupRingElement.monomial(pg, ring, pg.make((0, g.free[0]), ())).scale(v)
    return out


def koszul_z_homotopy(ring: CoeffRing, x: GroupRingElement) -> GroupRingElement:
    """s_1: P_0 -> P_1 with the three-case formula on t^i⊗1, extended as a
    right-module map."""
    pg = pair_group(infinite_cyclic())
    out = GroupRingElement.zero(pg, ring)
    for e, v in x.support.items():
        i, j = e.free[0], e.free[1]
        if i >= 1:
            for l in range(i):
                out = out + GroupRingElement.monomial(
                    pg, ring, pg.make((l, i - l - 1 + j), ())).scale(ring.neg(v))
        elif i <= -1:
            for l in range(-i):
                out = out + GroupRingElement.monomial(
                    pg, ring, pg.make((-l - 1, i + l + j), ())).scale(v)
    return out


# -- P ⊗_A P triples, the interchange map and diagonals -------------------

# A component of a diagonal: leg degrees (i, j) and a triple-group element sum.
TripleComponents = Dict[Tuple[int, int], GroupRingElement]


def koszul_z_diagonal(ring: CoeffRing, degree: int,
                      x: GroupRingElement) -> TripleComponents:
    """The closed-form diagonal of the two-term resolution:
    a⊗b -> a⊗1 ⊗_A 1⊗b, in degree 1 into both bidegree summands."""
    g = infinite_cyclic()
    tg = triple_group(g)
    pg = pair_group(g)
    comp = GroupRingElement.zero(tg, ring)
    for e, v in x.support.items():
        a, b = e.free
        comp = comp + GroupRingElement.monomial(tg, ring, tg.make((a, 0, b), ())).scale(v)
    if degree == 0:
        return {(0, 0): comp}
    if degree == 1:
        return {(1, 0): comp, (0, 1): comp}
    raise ValueError("two-term resolution: degree 0 or 1 only")


def periodic_diagonal_components(n: int, ring: CoeffRing, degree: int) -> TripleComponents:
    """Diagonal for the 2-periodic resolution, synthesized through the bar
    resolution (phi ⊗_A phi) ∘ Δ_bar ∘ psi; see the comparison module."""
    from .comparison import periodic_diagonal
    tg = triple_group(cyclic(n))
    out = periodic_diagonal(n, ring, degree)
    # re-encode on the canonical triple group of this module
    fixed: TripleComponents = {}
    for key, val in out.items():
        acc = GroupRingElement.zero(tg, ring)
        for e, v in val.support.items():
            acc = acc + GroupRingElement.monomial(tg, ring, tg.make((), e.torsion)).scale(v)
        fixed[key] = acc
    return fixed


def tau_interchange(ga: GroupDescriptor, gb: GroupDescriptor,
                    bideg_a: Tuple[int, int], triple_a: GroupRingElement,
                    bideg_b: Tuple[int, int], triple_b: GroupRingElement,
                    ring: CoeffRing) -> Tuple[Tuple[int, int], GroupRingElement]:
    """tau: (P(A)⊗_A P(A)) ⊗ (P(B)⊗_B P(B)) -> P(A⊗B) ⊗_{A⊗B} P(A⊗B) with
    sign (-1)^{|a2||b1|}; returns the combined leg degrees and triple."""
    i1, i2 = bideg_a
    j1, j2 = bideg_b
    sign = -1 if (i2 * j1) % 2 else 1
    gc = GroupDescriptor(ga.free_rank + gb.free_rank, ga.torsion_orders + gb.torsion_orders)
    tg = triple_group(gc)
    ra, ta = ga.free_rank, len(ga.torsion_orders)
    out = GroupRingElement.zero(tg, ring)
    for ea, va in triple_a.support.items():
        fa = [ea.free[k * ra:(k + 1) * ra] for k in range(3)]
        sa = [ea.torsion[k * ta:(k + 1) * ta] for k in range(3)]
        for eb, vb in triple_b.support.items():
            rb, tb = gb.free_rank, len(gb.torsion_orders)
            fb = [eb.free[k * rb:(k + 1) * rb] for k in range(3)]
            sb = [eb.torsion[k * tb:(k + 1) * tb] for k in range(3)]
            free = fa[0] + fb[0] + fa[1] + fb[1] + fa[2] + fb[2]
            tors = sa[0] + sb[0] + sa[1] + sb[1] + sa[2] + sb[2]
            out = out + GroupRingElement.monomial(tg, ring, tg.make(free, tors)).scale(
                ring.mul(ring.reduce(sign), ring.mul(va, vb)))
    return (i1 + j1, i2 + j2), out


def counit_check(g: GroupDescriptor, components: TripleComponents,
                 x_mu: GroupRingElement) -> bool:
    """(mu ⊗ mu) ∘ Δ = mu in degree 0: collapse each triple by the group law
    and compare with the multiplied input."""
    ring = x_mu.ring
    total = GroupRingElement.zero(g, ring)
    comp = components.get((0, 0))
    if comp is None:
        return x_mu.is_zero()
    r, t = g.free_rank, len(g.torsion_orders)
    for e, v in comp.support.items():
        free = tuple(e.free[k] + e.free[k + r] + e.free[k + 2 * r] for k in range(r))
        tors = tuple(e.torsion[k] + e.torsion[k + t] + e.torsion[k + 2 * t] for k in range(t))
        total = total + GroupRingElement.monomial(g, ring, g.make(free, tors)).scale(v)
    return total == x_mu


def diagonal(kind: str, ring: CoeffRing, degree: int, x: GroupRingElement,
             n: Optional[int] = None) -> TripleComponents:
    """Diagonal approximation dispatch: kind in {"KoszulZ", "Periodic"}.
    For "Periodic" the input must be 1⊗1 (the A^e-module generator)."""
    if kind == "KoszulZ":
        return koszul_z_diagonal(ring, degree, x)
    if kind == "Periodic":
        if n is None:
            raise ValueError("Periodic diagonal needs the order n")
        pg = pair_group(cyclic(n))
        if x != GroupRingElement.one(pg, ring):
            raise ValueError("Periodic diagonal is tabulated on the generator 1⊗1")
        return periodic_diagonal_components(n, ring, degree)
    raise ValueError(f"unknown resolution kind {kind!r}")
