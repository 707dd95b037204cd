"""Verification suites: each suite runs a grid of exact checks comparing
independent computation routes (bar tables, small resolutions, closed
forms) and returns a list of named pass/fail results.

These back both the command-line `verify` command and the acceptance
tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .bar_complex import (BarChain, TensorChain, aw_map, connes_B, ez_map,
                          tensor_connes)
from .bv_engine import (CyclicMonomial, TensorCochain, ZMonomial,
                        cyclic_bracket_circle, cyclic_bracket_from_delta,
                        cyclic_classes_equal, cyclic_delta_engine,
                        delta_transferred, seven_term_residual,
                        tensor_compressed_equal)
from .chain_complex import (FreeComplex, HomologySummary, IntMatrix,
                            _cyclic_mult_matrix, cochain_complex,
                            cohomology_at, tensor_total_complex)
from .coeff import CoeffRing, QQ, ZZ, Zmod
from .comparison import cup_small, phi_cochain, psi_cochain
from .group_ring import (GroupDescriptor, GroupRingElement, cyclic,
                         infinite_cyclic)
from . import presentations as pres_mod
from .presentations import (GradedPresentation, Poly, poly_equal,
                            present_cyclic, present_fg_abelian,
                            present_free_abelian, present_tensor_Z,
                            loop_space_iso, truncated_poly_iso)

CHARP_GRID: Tuple[Tuple[int, int], ...] = ((2, 2), (2, 4), (2, 6), (3, 3),
                                           (3, 6), (5, 5))
TENSOR_GRID: Tuple[Tuple[int, int], ...] = ((2, 2), (4, 2), (6, 3), (6, 2))


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _sigma_value(n: int, ring: CoeffRing, exp: int,
                 coeff=1) -> GroupRingElement:
    g = cyclic(n)
    return GroupRingElement.monomial(g, ring, g.make((), (exp % n,))).scale(
        ring.reduce(coeff))


def _poly_to_value(n: int, ring: CoeffRing, poly: Poly) -> GroupRingElement:
    """Collapse a cyclic-presentation polynomial (all terms of one degree)
    to its small-complex value Σ c σ^l."""
    g = cyclic(n)
    out = GroupRingElement.zero(g, ring)
    for mono, c in poly.items():
        out = out + _sigma_value(n, ring, mono[0], c)
    return out


# -- criterion 1: cyclic cohomology over Z ---------------------------------


def cyclic_cochain_complex(n: int, cap: int) -> FreeComplex:
    """Induced cochain complex of Z[Z/n] on the 2-periodic resolution:
    C^i = Z^n, differential 0 out of even degree, n·x^{n-1} out of odd."""
    ranks = {i: n for i in range(cap + 2)}
    diff = {}
    zero = IntMatrix.zero(ZZ, n, n)
    for i in range(cap + 1):
        diff[i] = _cyclic_mult_matrix(n, n) if i % 2 == 1 else zero
    return cochain_complex(ZZ, ranks, diff)


def expected_cyclic_cohomology(n: int, degree: int) -> Tuple[int, List[int]]:
    if degree == 0:
        return (n, [])
    if degree % 2 == 1:
        return (0, [])
    return (0, [n] * n)


def suite_cyclic_homology(ns: Sequence[int] = range(2, 9),
                          cap: int = 6) -> List[CheckResult]:
    out = []
    for n in ns:
        cplx = cyclic_cochain_complex(n, cap)
        for i in range(cap + 1):
            h = cohomology_at(cplx, i)
            exp_rank, exp_tors = expected_cyclic_cohomology(n, i)
            ok = h.free_rank == exp_rank and h.torsion == exp_tors
            out.append(CheckResult(
                f"cyclic n={n} degree {i}", ok,
                f"got Z^{h.free_rank} + {h.torsion}, "
                f"expected Z^{exp_rank} + {exp_tors}"))
    return out


# -- criterion 2: char-p ring structure ------------------------------------


def _cyclic_class_monomials(pr: GradedPresentation, max_degree: int,
                            max_x: Optional[int] = None):
    for mono in pr.monomials_up_to(max_degree):
        if max_x is not None and mono[0] > max_x:
            continue
        yield mono, pr.degree(mono)


def suite_ring_structure(grid: Sequence[Tuple[int, int]] = CHARP_GRID
                         ) -> List[CheckResult]:
    out = []
    for p, n in grid:
        ring = Zmod(p)
        pr = present_cyclic(ring, n)
        classes = list(_cyclic_class_monomials(pr, 2, max_x=min(n - 1, 2)))
        for m1, d1 in classes:
            for m2, d2 in classes:
                v1 = _sigma_value(n, ring, m1[0])
                v2 = _sigma_value(n, ring, m2[0])
                engine = cup_small(n, ring, d1, v1, d2, v2)
                prod = pr.mul({m1: ring.one}, {m2: ring.one})
                expected = _poly_to_value(n, ring, prod)
                ok = cyclic_classes_equal(n, ring, d1 + d2, engine, expected)
                tag = " [y*y branch]" if (m1[1] and m2[1]) else ""
                out.append(CheckResult(
                    f"cup p={p} n={n} {m1}*{m2}{tag}", ok))
    return out


# -- criteria 3 and 4: Δ over integral domains and in char p ---------------


def suite_delta_domain(ns: Sequence[int] = range(2, 7),
                       cap: int = 6) -> List[CheckResult]:
    out = []
    for ring, tag in ((ZZ, "Z"), (QQ, "Q")):
        for n in ns:
            for k in range(1, cap // 2 + 1):
                for l in range(n):
                    m = CyclicMonomial(k, 0, l)
                    d = cyclic_delta_engine(n, ring, m)
                    ok = cyclic_classes_equal(
                        n, ring, m.degree - 1, d,
                        GroupRingElement.zero(cyclic(n), ring))
                    out.append(CheckResult(
                        f"Delta(z^{k} x^{l}) = 0 over {tag}, n={n}", ok))
    return out


def suite_delta_charp(grid: Sequence[Tuple[int, int]] = CHARP_GRID
                      ) -> List[CheckResult]:
    out = []
    for p, n in grid:
        ring = Zmod(p)
        for k in range(0, 3):
            for l in range(n):
                m = CyclicMonomial(k, 1, l)
                d = cyclic_delta_engine(n, ring, m)
                expect = _sigma_value(n, ring, l - 1, l - 1)
                out.append(CheckResult(
                    f"Delta(z^{k} y x^{l}) p={p} n={n}",
                    cyclic_classes_equal(n, ring, m.degree - 1, d, expect)))
                if k:
                    m0 = CyclicMonomial(k, 0, l)
                    d0 = cyclic_delta_engine(n, ring, m0)
                    out.append(CheckResult(
                        f"Delta(z^{k} x^{l}) = 0 p={p} n={n}",
                        cyclic_classes_equal(
                            n, ring, m0.degree - 1, d0,
                            GroupRingElement.zero(cyclic(n), ring))))
    return out


# -- criterion 5: bracket route consistency --------------------------------


def suite_bracket(grid: Sequence[Tuple[int, int]] = CHARP_GRID
                  ) -> List[CheckResult]:
    out = []
    for p, n in grid:
        ring = Zmod(p)
        pr = present_cyclic(ring, n)
        gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]          # x, y, z
        extra = [(1, 1, 0), (1, 0, 1)]                    # yx, zx
        monos = gens + extra
        for m1 in monos:
            for m2 in monos:
                cm1 = CyclicMonomial(m1[2], m1[1], m1[0])
                cm2 = CyclicMonomial(m2[2], m2[1], m2[0])
                deg = cm1.degree + cm2.degree - 1
                closed = pr.bracket({m1: ring.one}, {m2: ring.one})
                expect = _poly_to_value(n, ring, closed)
                circ = cyclic_bracket_circle(n, ring, cm1, cm2)
                via = cyclic_bracket_from_delta(n, ring, cm1, cm2)
                ok1 = cyclic_classes_equal(n, ring, deg, circ, expect)
                ok2 = cyclic_classes_equal(n, ring, deg, via, expect)
                out.append(CheckResult(
                    f"bracket p={p} n={n} {m1},{m2} circle", ok1))
                out.append(CheckResult(
                    f"bracket p={p} n={n} {m1},{m2} delta-route", ok2))
    return out


# -- criterion 6: the integral tensor theorem ------------------------------


def tensor_cochain_complex(n: int, m: int, cap: int) -> FreeComplex:
    a = cyclic_cochain_complex(n, cap)
    b = cyclic_cochain_complex(m, cap)
    return tensor_total_complex(a, b)


def expected_tensor_cohomology(n: int, m: int,
                               degree: int) -> Tuple[int, List[int]]:
    """Torsion as invariant factors, ascending."""
    nm = n * m
    if degree == 0:
        return (nm, [])
    j, odd = divmod(degree, 2)
    if odd:
        return (0, [m] * (j * nm))
    return (0, [m] * ((j - 1) * nm) + sorted([m] * nm + [n] * nm))


def tensor_monomial_rep(n: int, m: int, ring: CoeffRing, i: int, j: int,
                        l: int, r: int, s: int) -> TensorCochain:
    """Bar-table representative of the class x^i t^j a^l b^r c^s."""
    ga, gb = cyclic(n), cyclic(m)
    va = GroupRingElement.monomial(ga, ring, ga.make((), (i % n,)))
    vb = GroupRingElement.monomial(gb, ring, gb.make((), (j % m,)))
    base = TensorCochain(n, m, ring, [
        (phi_cochain(n, ring, 2 * l, va), phi_cochain(m, ring, 2 * r, vb))])
    if s == 0:
        return base
    return base.cup(c_representative(n, m, ring))


def c_representative(n: int, m: int, ring: CoeffRing) -> TensorCochain:
    """The degree-3 generator: ψ̄*A_1(1)⊗ψ̄*B_2(1) − k·ψ̄*A_2(x^{n-1})⊗ψ̄*B_1(t)."""
    k = n // m
    ga, gb = cyclic(n), cyclic(m)
    one_a = GroupRingElement.one(ga, ring)
    one_b = GroupRingElement.one(gb, ring)
    xn1 = GroupRingElement.monomial(ga, ring, ga.make((), (n - 1,)))
    t = GroupRingElement.monomial(gb, ring, gb.make((), (1,)))
    return TensorCochain(n, m, ring, [
        (phi_cochain(n, ring, 1, one_a), phi_cochain(m, ring, 2, one_b)),
        (phi_cochain(n, ring, 2, xn1).scale(ring.reduce(-k)),
         phi_cochain(m, ring, 1, t)),
    ])


def _tensor_poly_to_compressed(n: int, m: int, ring: CoeffRing,
                               poly: Poly) -> Dict[Tuple[int, int],
                                                   GroupRingElement]:
    """Presentation polynomial (s = 0 terms only) to bidegree -> value over
    R[Z/n ⊕ Z/m]."""
    grp = GroupDescriptor(0, (n, m))
    out: Dict[Tuple[int, int], GroupRingElement] = {}
    for (i, j, l, r, s), c in poly.items():
        if s != 0:
            raise ValueError("compressed comparison needs c-free terms")
        key = (2 * l, 2 * r)
        term = GroupRingElement.monomial(
            grp, ring, grp.make((), (i % n, j % m))).scale(ring.reduce(c))
        out[key] = out.get(key, GroupRingElement.zero(grp, ring)) + term
    return {k: v for k, v in out.items() if not v.is_zero()}


def suite_tensor(grid: Sequence[Tuple[int, int]] = TENSOR_GRID,
                 cap: int = 6, random_count: int = 50,
                 seed: int = 20240) -> List[CheckResult]:
    out = []
    ring = ZZ
    for n, m in grid:
        k = n // m
        # (a) cohomology of the total complex
        cplx = tensor_cochain_complex(n, m, cap)
        for i in range(cap + 1):
            h = cohomology_at(cplx, i)
            exp_rank, exp_tors = expected_tensor_cohomology(n, m, i)
            ok = h.free_rank == exp_rank and h.torsion == exp_tors
            out.append(CheckResult(
                f"tensor ({n},{m}) cohomology degree {i}", ok,
                f"got Z^{h.free_rank} + {h.torsion}, "
                f"expected Z^{exp_rank} + {exp_tors}"))
        # (b) the c^2 branch
        pr = present_tensor_Z(n, m)
        c = c_representative(n, m, ring)
        c2 = c.cup(c).compress()
        expect = _tensor_poly_to_compressed(
            n, m, ring, pr.normalize({(0, 0, 0, 0, 2): 1}))
        out.append(CheckResult(
            f"tensor ({n},{m}) c^2 branch",
            tensor_compressed_equal(n, m, ring, 6, c2, expect)))
        # (c) boxed Δ values on c, xc, tc, ac, bc
        for label, mono in (("c", (0, 0, 0, 0, 1)), ("xc", (1, 0, 0, 0, 1)),
                            ("tc", (0, 1, 0, 0, 1)), ("ac", (0, 0, 1, 0, 1)),
                            ("bc", (0, 0, 0, 1, 1))):
            i, j, l, r, s = mono
            rep = tensor_monomial_rep(n, m, ring, i, j, l, r, s)
            dm = rep.delta().compress()
            expect = _tensor_poly_to_compressed(n, m, ring,
                                                pr.delta_mono(mono))
            deg = pr.degree(mono) - 1
            out.append(CheckResult(
                f"tensor ({n},{m}) Delta({label})",
                tensor_compressed_equal(n, m, ring, deg, dm, expect)))
        # (d) random normal monomials
        rng = random.Random(seed + 97 * n + m)
        for trial in range(random_count):
            i = rng.randrange(n)
            j = rng.randrange(m)
            lr_cap = 1 if n >= 6 else 2
            l = rng.randrange(lr_cap + 1)
            r = rng.randrange(lr_cap + 1)
            s = rng.randrange(2)
            mono = (i, j, l, r, s)
            rep = tensor_monomial_rep(n, m, ring, *mono)
            dm = rep.delta().compress()
            expect = _tensor_poly_to_compressed(n, m, ring,
                                                pr.delta_mono(mono))
            deg = pr.degree(mono) - 1
            ok = (dm == {} and expect == {}) if deg < 0 else \
                tensor_compressed_equal(n, m, ring, deg, dm, expect)
            out.append(CheckResult(
                f"tensor ({n},{m}) random #{trial} Delta{mono}", ok))
    return out


# -- criterion 7: tensor operator identities -------------------------------


def _tensor_basis_chains(ga: GroupDescriptor, gb: GroupDescriptor,
                         ring: CoeffRing, max_total: int):
    from itertools import product as iproduct
    els_a = [g for g in ga.elements() if not g.is_identity()]
    els_b = [g for g in gb.elements() if not g.is_identity()]
    for p in range(max_total + 1):
        for q in range(max_total + 1 - p):
            for slots_a in iproduct(els_a, repeat=p):
                for slots_b in iproduct(els_b, repeat=q):
                    for mod_a in ga.elements():
                        for mod_b in gb.elements():
                            yield TensorChain(ga, gb, ring, {
                                ((slots_a, mod_a), (slots_b, mod_b)):
                                ring.one})


def suite_tensor_operators(na: int = 2, nb: int = 3,
                           max_total: int = 3) -> List[CheckResult]:
    ring = ZZ
    ga, gb = cyclic(na), cyclic(nb)
    ok_aw = True
    ok_b = True
    count = 0
    bad_aw = bad_b = ""
    for t in _tensor_basis_chains(ga, gb, ring, max_total):
        count += 1
        back = aw_map(ez_map(t), ga, gb)
        if back.terms != t.terms:
            ok_aw = False
            bad_aw = bad_aw or str(next(iter(t.terms)))
        lhs = aw_map(connes_B(ez_map(t)), ga, gb)
        rhs = tensor_connes(t)
        if lhs.terms != rhs.terms:
            ok_b = False
            bad_b = bad_b or str(next(iter(t.terms)))
    return [
        CheckResult(f"AW o EZ = id on {count} basis chains (Z/{na} + Z/{nb})",
                    ok_aw, bad_aw),
        CheckResult(f"AW B EZ = B(x)id + id(x)B on {count} basis chains",
                    ok_b, bad_b),
    ]


# -- criterion 8: transfer on the integers ---------------------------------


def suite_bvkz(ring: CoeffRing = ZZ) -> List[CheckResult]:
    out = []
    group = infinite_cyclic()
    for u in (1, -1):
        for k in range(-2, 3):
            for i in range(-3, 4):
                _, val = delta_transferred(ring, u, k, ZMonomial(1, i))
                expect = GroupRingElement.monomial(
                    group, ring, group.make((i - 1,), ())).scale(
                        ring.reduce(i + k))
                out.append(CheckResult(
                    f"Delta_a(y x^{i}) u={u} k={k}", val == expect))
                _, val0 = delta_transferred(ring, u, k, ZMonomial(0, i))
                out.append(CheckResult(
                    f"Delta_a(x^{i}) = 0 u={u} k={k}", val0.is_zero()))
    return out


# -- criterion 9: free abelian rank 2 and the mixed group ------------------


def _free_abelian_engine_delta(ring: CoeffRing, pr: GradedPresentation,
                               mono: Tuple[int, ...]) -> Poly:
    """Δ on R[Z^r] assembled factor-by-factor from the transfer route,
    with the left-degree Koszul sign."""
    rank = len(pr.generators) // 2
    xs, ys = mono[:rank], mono[rank:]
    out: Poly = {}
    for kk in range(rank):
        if ys[kk] == 0:
            continue
        sign = -1 if sum(ys[:kk]) % 2 else 1
        _, val = delta_transferred(ring, 1, -1, ZMonomial(1, xs[kk]))
        for g, c in val.support.items():
            nx = xs[:kk] + (g.free[0],) + xs[kk + 1:]
            ny = ys[:kk] + (0,) + ys[kk + 1:]
            key = nx + ny
            coeff = ring.mul(ring.reduce(sign), c)
            out[key] = ring.add(out.get(key, ring.zero), coeff)
    return {k: v for k, v in out.items() if v != ring.zero}


def suite_free_abelian(random_count: int = 30,
                       seed: int = 411) -> List[CheckResult]:
    out = []
    ring = ZZ
    pr = present_free_abelian(2, ring)
    rng = random.Random(seed)
    for trial in range(random_count):
        mono = (rng.randint(-3, 3), rng.randint(-3, 3),
                rng.randrange(2), rng.randrange(2))
        closed = pr.delta_mono(mono)
        engine = pr.normalize(_free_abelian_engine_delta(ring, pr, mono))
        out.append(CheckResult(
            f"Z^2 Delta random #{trial} {mono}",
            poly_equal(pr, closed, engine)))

    # Z + Z/2 over F_2: signed tensor of the transfer route and the
    # dual-basis route
    f2 = Zmod(2)
    group = GroupDescriptor(1, (2,))
    prm = present_fg_abelian(group, f2)
    n = 2
    for i in range(-2, 3):
        for rr in range(2):
            for (l, e, k) in ((0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1),
                              (0, 1, 0), (1, 0, 2)):
                mono = (i, rr, l, e, k)
                closed = prm.delta_mono(mono)
                engine: Poly = {}
                # left factor: transfer on R[Z]
                if rr:
                    _, val = delta_transferred(f2, 1, -1, ZMonomial(1, i))
                    for g, c in val.support.items():
                        key = (g.free[0], 0, l, e, k)
                        engine[key] = f2.add(engine.get(key, f2.zero), c)
                # right factor: dual-basis Δ on F_2[Z/2], Koszul sign
                # (-1)^{rr} is trivial in characteristic 2
                cm = CyclicMonomial(k, e, l)
                if cm.degree >= 1:
                    dv = cyclic_delta_engine(n, f2, cm)
                    ddeg = cm.degree - 1
                    kk, ee = divmod(ddeg, 2)
                    for g, c in dv.support.items():
                        key = (i, rr, g.torsion[0], ee, kk)
                        engine[key] = f2.add(engine.get(key, f2.zero), c)
                engine = {kx: v for kx, v in engine.items() if v != f2.zero}
                out.append(CheckResult(
                    f"Z+Z/2 Delta {mono}",
                    poly_equal(prm, closed, engine)))
    return out


# -- criterion 10: comparison isomorphisms ---------------------------------


def suite_isos() -> List[CheckResult]:
    out = []
    for p in (2, 3, 5):
        rep = truncated_poly_iso(p)
        for label, good in rep.checks:
            out.append(CheckResult(f"truncated p={p}: {label}", good))
    for ring in (ZZ, Zmod(5)):
        rep = loop_space_iso(ring)
        for label, good in rep.checks:
            out.append(CheckResult(f"loop space over {ring}: {label}", good))
    return out


# -- criterion 11 helpers: seven-term identity grid ------------------------


def suite_seven_term(grid: Sequence[Tuple[int, int]] = ((2, 2), (3, 3),
                                                        (4, 2)),
                     ) -> List[CheckResult]:
    out = []
    for n, p in grid:
        ring = Zmod(p)
        gens = [CyclicMonomial(0, 0, 1), CyclicMonomial(0, 1, 0),
                CyclicMonomial(1, 0, 0)]
        for a in gens:
            for b in gens:
                for c in gens:
                    ok, _ = seven_term_residual(n, ring, a, b, c)
                    out.append(CheckResult(
                        f"seven-term n={n} p={p} ({a},{b},{c})", ok))
    return out


SUITES: Dict[str, Callable[[], List[CheckResult]]] = {
    "cyclic_homology": suite_cyclic_homology,
    "ring_structure": suite_ring_structure,
    "delta_domain": suite_delta_domain,
    "delta_charp": suite_delta_charp,
    "bracket": suite_bracket,
    "tensor": suite_tensor,
    "tensor_operators": suite_tensor_operators,
    "bvkz": suite_bvkz,
    "free_abelian": suite_free_abelian,
    "isos": suite_isos,
    "seven_term": suite_seven_term,
}


def run_suite(name: str) -> List[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; available: "
                         + ", ".join(sorted(SUITES)))
    return SUITES[name]()
