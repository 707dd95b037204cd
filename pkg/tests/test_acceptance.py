"""Acceptance gate: eleven end-to-end criteria, one pass/fail line each.

Each criterion drives the corresponding verification suite (or a direct
exhaustive check) and prints a single summary line, so `pytest -v` plus the
captured output give a line-per-criterion report.
"""

import time
from itertools import product

import pytest

from hhbv import verification as V
from hhbv.bar_complex import (BarChain, connes_B, hochschild_boundary)
from hhbv.bv_engine import cyclic_classes_equal, delta_dual_basis
from hhbv.coeff import ZZ, Zmod
from hhbv.comparison import phi_cochain, psi_cochain
from hhbv.group_ring import GroupRingElement, cyclic
from hhbv.small_resolutions import pair_group, periodic_boundary


def _drive(number, label, results, elapsed, limit=None):
    failed = [r for r in results if not r.ok]
    ok = not failed and (limit is None or elapsed < limit)
    bound = "" if limit is None else f", limit {limit:.0f}s"
    print(f"CRITERION {number:02d}: {'PASS' if ok else 'FAIL'} - {label} "
          f"({len(results)} checks, {elapsed:.1f}s{bound})")
    assert not failed, failed[:5]
    if limit is not None:
        assert elapsed < limit, f"runtime {elapsed:.1f}s exceeds {limit}s"


def _suite(number, label, name, limit=None, **kw):
    start = time.perf_counter()
    results = V.SUITES[name](**kw)
    _drive(number, label, results, time.perf_counter() - start, limit)


def test_criterion_01_cyclic_module_structure():
    _suite(1, "cyclic module structure over Z, degrees <= 6", "cyclic_homology",
           limit=5.0)


def test_criterion_02_cyclic_ring_structure():
    _suite(2, "cyclic cup products in char p", "ring_structure", limit=30.0)


def test_criterion_03_bv_integral_domain():
    _suite(3, "BV operator vanishes over Z and Q", "delta_domain")


def test_criterion_04_bv_char_p():
    _suite(4, "BV operator closed form in char p", "delta_charp")


def test_criterion_05_bracket_consistency():
    _suite(5, "bracket route agreement on generator pairs", "bracket")


def test_criterion_06_tensor_theorem():
    _suite(6, "tensor-product groups: homology, squares, BV values", "tensor",
           limit=180.0)


def test_criterion_07_tensor_operator_identities():
    _suite(7, "interchange/shuffle identities with the cyclic operator",
           "tensor_operators")


def test_criterion_08_infinite_cyclic_transfer():
    _suite(8, "transferred BV operator on Laurent group rings", "bvkz")


def test_criterion_09_free_and_mixed_groups():
    _suite(9, "free-abelian and mixed-group BV formulas", "free_abelian")


def test_criterion_10_comparison_isomorphisms():
    _suite(10, "truncated-polynomial and loop-space isomorphisms", "isos")


def _basis_chains(n, ring, degree):
    g = cyclic(n)
    gens = [e for e in g.elements() if not e.is_identity()]
    for slots in product(gens, repeat=degree):
        for m in g.elements():
            yield BarChain.single(g, ring, slots, m)


def test_criterion_11_property_suites():
    start = time.perf_counter()
    checks = []

    # d^2 = 0 on the periodic resolution
    for n in (2, 3, 4):
        pg = pair_group(cyclic(n))
        for degree in (2, 3, 4):
            for i in range(n):
                for j in range(n):
                    x = GroupRingElement.monomial(pg, ZZ, pg.make((), (i, j)))
                    dd = periodic_boundary(n, ZZ, degree - 1,
                                           periodic_boundary(n, ZZ, degree, x))
                    checks.append(V.CheckResult(
                        f"d2[{n},{degree},{i},{j}]", dd.is_zero()))

    # b^2 = 0, B^2 = 0, bB + Bb = 0 on all basis chains
    for n in (2, 3):
        ring = Zmod(n)
        for degree in (1, 2):
            for c in _basis_chains(n, ring, degree):
                if degree >= 2:
                    bb = hochschild_boundary(hochschild_boundary(c))
                    checks.append(V.CheckResult(f"b2[{n},{degree}]",
                                                bb.is_zero()))
                BB = connes_B(connes_B(c))
                anti = hochschild_boundary(connes_B(c)) + \
                    connes_B(hochschild_boundary(c))
                checks.append(V.CheckResult(f"B2[{n},{degree}]", BB.is_zero()))
                checks.append(V.CheckResult(f"bB+Bb[{n},{degree}]",
                                            anti.is_zero()))

    # Delta о Delta = 0 at class level and psi* phi* = id
    for n, p in [(2, 2), (3, 3), (4, 2)]:
        ring = Zmod(p)
        g = cyclic(n)
        for degree in range(5):
            for i in range(n):
                a = GroupRingElement.monomial(g, ring, g.make((), (i,)))
                f = phi_cochain(n, ring, degree, a)
                checks.append(V.CheckResult(
                    f"section[{n},{degree},{i}]",
                    psi_cochain(n, ring, f) == a))
                if degree >= 2:
                    dd = psi_cochain(n, ring,
                                     delta_dual_basis(delta_dual_basis(f)))
                    checks.append(V.CheckResult(
                        f"DD[{n},{degree},{i}]",
                        cyclic_classes_equal(n, ring, degree - 2, dd,
                                             GroupRingElement.zero(g, ring))))

    checks.extend(V.SUITES["seven_term"]())
    _drive(11, "property suites (d2, b2, B2, DD, section, seven-term)",
           checks, time.perf_counter() - start, limit=600.0)
