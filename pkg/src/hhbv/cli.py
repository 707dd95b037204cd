"""Command-line interface: presentations, Δ and bracket evaluation,
homology tables, cross-route comparison, and batch verification.

Commands: present, delta, bracket, homology, verify, compare.
Output is deterministic; JSON output carries schema "hhbv/1" with all
numbers rendered as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bv_engine import (CyclicMonomial, cyclic_bracket_circle,
                        cyclic_bracket_from_delta, cyclic_classes_equal,
                        cyclic_delta_engine, tensor_compressed_equal)
from .chain_complex import cohomology_at
from .coeff import CoeffRing, ZZ, parse_ring
from .group_ring import GroupDescriptor, GroupRingElement, cyclic, parse_group
from .presentations import (GradedPresentation, Poly, poly_equal,
                            present_fg_abelian)
from . import verification as verif

SCHEMA = "hhbv/1"


def _jsonify(obj):
    """Numbers become decimal strings so exact values survive JSON."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 \
            else str(obj.numerator)
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return str(obj)


def _render_text(doc, indent: int = 0, out: Optional[List[str]] = None) -> str:
    if out is None:
        out = []
        _render_text(doc, indent, out)
        return "\n".join(out)
    pad = "  " * indent
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)):
                out.append(f"{pad}{k}:")
                _render_text(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                _render_text(v, indent, out)
            else:
                out.append(f"{pad}- {v}")
    else:
        out.append(f"{pad}{doc}")
    return ""


def emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        payload = {"schema": SCHEMA}
        payload.update(_jsonify(doc))
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_render_text(doc))


def _default_degree() -> int:
    env = os.environ.get("HHBV_DEGREE_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"HHBV_DEGREE_CAP={env!r} is not an integer")
    return 6


def _check_degree(d: int) -> int:
    if not 1 <= d <= 8:
        raise SystemExit(f"degree bound {d} outside [1, 8]")
    return d


def _presentation(args) -> Tuple[GroupDescriptor, CoeffRing, GradedPresentation]:
    group = parse_group(args.group)
    ring = parse_ring(args.ring)
    return group, ring, present_fg_abelian(group, ring)


def _group_shape(group: GroupDescriptor) -> str:
    """cyclic | tensor | free | product."""
    if group.free_rank == 0 and len(group.torsion_orders) == 1:
        return "cyclic"
    if group.free_rank == 0 and len(group.torsion_orders) == 2:
        return "tensor"
    if not group.torsion_orders:
        return "free"
    return "product"


# -- delta routing ---------------------------------------------------------


def _cyclic_mono_of(pr: GradedPresentation, mono) -> CyclicMonomial:
    if len(pr.generators) == 3:       # x, y, z
        l, e, k = mono
    else:                             # x, z or x only
        l = mono[0]
        e = 0
        k = mono[1] if len(mono) == 2 else 0
    return CyclicMonomial(k, e, l)


def _delta_engine_cyclic(n: int, ring: CoeffRing, pr: GradedPresentation,
                         poly: Poly, closed: Poly) -> Optional[bool]:
    degs = {pr.degree(m) for m in poly}
    if len(degs) != 1:
        return None
    deg = degs.pop()
    if deg == 0:
        return not closed
    total = GroupRingElement.zero(cyclic(n), ring)
    for m, c in poly.items():
        cm = _cyclic_mono_of(pr, m)
        total = total + cyclic_delta_engine(n, ring, cm).scale(c)
    expect = verif._poly_to_value(n, ring, closed)
    return cyclic_classes_equal(n, ring, deg - 1, total, expect)


def _delta_engine_tensor(n: int, m: int, ring: CoeffRing,
                         pr: GradedPresentation, poly: Poly,
                         closed: Poly) -> Optional[bool]:
    degs = {pr.degree(mm) for mm in poly}
    if len(degs) != 1:
        return None
    deg = degs.pop()
    if deg == 0:
        return not closed
    parts = []
    for mm, c in poly.items():
        rep = verif.tensor_monomial_rep(n, m, ring, *mm)
        parts.extend((a.scale(ring.reduce(c)), b) for a, b in rep.pairs)
    from .bv_engine import TensorCochain
    dm = TensorCochain(n, m, ring, parts).delta().compress()
    expect = verif._tensor_poly_to_compressed(n, m, ring, closed)
    return tensor_compressed_equal(n, m, ring, deg - 1, dm, expect)


def _delta_engine_free(ring: CoeffRing, pr: GradedPresentation, poly: Poly,
                       closed: Poly) -> bool:
    engine: Poly = {}
    for mm, c in poly.items():
        for k, v in verif._free_abelian_engine_delta(ring, pr, mm).items():
            engine[k] = ring.add(engine.get(k, ring.zero), ring.mul(v, c))
    return poly_equal(pr, pr.normalize(engine), closed)


# -- commands --------------------------------------------------------------


def cmd_present(args) -> int:
    _, _, pr = _presentation(args)
    doc = pr.serialize(_check_degree(args.degree))
    emit(doc, args.format)
    return 0


def cmd_delta(args) -> int:
    group, ring, pr = _presentation(args)
    monos = args.monomial or []
    if len(monos) != 1:
        raise SystemExit("delta needs exactly one -m/--monomial")
    poly = pr.parse_monomial(monos[0])
    closed = pr.delta(poly)
    shape = _group_shape(group)
    agreement: Optional[bool] = None
    route = "closed-form"
    if shape == "cyclic":
        agreement = _delta_engine_cyclic(group.torsion_orders[0], ring, pr,
                                         poly, closed)
        route = "closed-form + dual-basis engine"
    elif shape == "tensor" and ring == ZZ:
        n, m = group.torsion_orders
        agreement = _delta_engine_tensor(n, m, ring, pr, poly, closed)
        route = "closed-form + tensor engine"
    elif shape == "free":
        agreement = _delta_engine_free(ring, pr, poly, closed)
        route = "closed-form + transfer engine"
    doc = {
        "command": "delta",
        "group": args.group,
        "ring": str(ring),
        "monomial": pr.format_poly(poly),
        "delta": pr.format_poly(closed),
        "route": route,
        "agreement": agreement,
    }
    emit(doc, args.format)
    return 0 if agreement in (True, None) else 1


def cmd_bracket(args) -> int:
    group, ring, pr = _presentation(args)
    monos = args.monomial or []
    if len(monos) != 2:
        raise SystemExit("bracket needs exactly two -m/--monomial arguments")
    p1 = pr.parse_monomial(monos[0])
    p2 = pr.parse_monomial(monos[1])
    closed = pr.bracket(p1, p2)
    shape = _group_shape(group)
    agreement: Optional[bool] = None
    route = "closed-form"
    if shape == "cyclic" and len(p1) == 1 and len(p2) == 1:
        n = group.torsion_orders[0]
        (m1, c1), = p1.items()
        (m2, c2), = p2.items()
        cm1, cm2 = _cyclic_mono_of(pr, m1), _cyclic_mono_of(pr, m2)
        deg = cm1.degree + cm2.degree - 1
        scale = ring.mul(c1, c2)
        circ = cyclic_bracket_circle(n, ring, cm1, cm2).scale(scale)
        via = cyclic_bracket_from_delta(n, ring, cm1, cm2).scale(scale)
        expect = verif._poly_to_value(n, ring, closed)
        agreement = (cyclic_classes_equal(n, ring, deg, circ, expect)
                     and cyclic_classes_equal(n, ring, deg, via, expect))
        route = "closed-form + circle engine + delta-route engine"
    doc = {
        "command": "bracket",
        "group": args.group,
        "ring": str(ring),
        "monomials": [pr.format_poly(p1), pr.format_poly(p2)],
        "bracket": pr.format_poly(closed),
        "route": route,
        "agreement": agreement,
    }
    emit(doc, args.format)
    return 0 if agreement in (True, None) else 1


def cmd_homology(args) -> int:
    group = parse_group(args.group)
    ring = parse_ring(args.ring)
    cap = _check_degree(args.degree)
    shape = _group_shape(group)
    if ring != ZZ:
        raise SystemExit("homology tables are computed over Z; "
                         "use `present` for field-coefficient structure")
    if shape == "cyclic":
        cplx = verif.cyclic_cochain_complex(group.torsion_orders[0], cap)
    elif shape == "tensor":
        n, m = group.torsion_orders
        if n % m != 0:
            raise SystemExit(f"need the second order to divide the first, "
                             f"got {group.torsion_orders}")
        cplx = verif.tensor_cochain_complex(n, m, cap)
    else:
        raise SystemExit("homology tables cover Z/n and Z/n x Z/m groups")
    table = {}
    for i in range(cap + 1):
        table[f"degree {i}"] = cohomology_at(cplx, i).group_string()
    doc = {"command": "homology", "group": args.group, "ring": "Z",
           "table": table}
    emit(doc, args.format)
    return 0


def cmd_compare(args) -> int:
    group, ring, pr = _presentation(args)
    if _group_shape(group) != "cyclic":
        raise SystemExit("compare covers cyclic groups")
    n = group.torsion_orders[0]
    monos = args.monomial or ["y" if len(pr.generators) == 3 else "x"]
    rows = []
    all_ok = True
    for text in monos:
        poly = pr.parse_monomial(text)
        closed = pr.delta(poly)
        agree = _delta_engine_cyclic(n, ring, pr, poly, closed)
        rows.append({"operation": f"delta({text})",
                     "closed_form": pr.format_poly(closed),
                     "routes": "closed-form vs dual-basis",
                     "agree": agree})
        all_ok = all_ok and agree in (True, None)
        if len(poly) != 1:
            continue
        (m1, _), = poly.items()
        cm1 = _cyclic_mono_of(pr, m1)
        for gen in pr.generators:
            gp = pr.parse_monomial(gen.name)
            (m2, _), = gp.items()
            cm2 = _cyclic_mono_of(pr, m2)
            deg = cm1.degree + cm2.degree - 1
            closed_b = pr.bracket(poly, gp)
            expect = verif._poly_to_value(n, ring, closed_b)
            circ = cyclic_bracket_circle(n, ring, cm1, cm2)
            via = cyclic_bracket_from_delta(n, ring, cm1, cm2)
            ok = (cyclic_classes_equal(n, ring, deg, circ, expect)
                  and cyclic_classes_equal(n, ring, deg, via, expect))
            rows.append({"operation": f"bracket({text}, {gen.name})",
                         "closed_form": pr.format_poly(closed_b),
                         "routes": "circle vs delta-route vs closed-form",
                         "agree": ok})
            all_ok = all_ok and ok
    doc = {"command": "compare", "group": args.group, "ring": str(ring),
           "matrix": rows}
    emit(doc, args.format)
    return 0 if all_ok else 1


def _run_one_suite(name: str):
    return name, verif.run_suite(name)


def cmd_verify(args) -> int:
    names = args.suite or sorted(verif.SUITES)
    for name in names:
        if name not in verif.SUITES:
            raise SystemExit(f"unknown suite {name!r}; available: "
                             + ", ".join(sorted(verif.SUITES)))
    jobs = max(1, args.jobs)
    if jobs > 1 and len(names) > 1:
        import multiprocessing
        with multiprocessing.Pool(min(jobs, len(names))) as pool:
            gathered = dict(pool.map(_run_one_suite, names))
        results = [(name, gathered[name]) for name in names]
    else:
        results = [_run_one_suite(name) for name in names]
    table = []
    failed = 0
    total = 0
    for name, checks in results:
        bad = [c for c in checks if not c.ok]
        failed += len(bad)
        total += len(checks)
        table.append({
            "suite": name,
            "checks": len(checks),
            "failed": len(bad),
            "status": "pass" if not bad else "FAIL",
            **({"failures": [c.name for c in bad[:10]]} if bad else {}),
        })
    doc = {"command": "verify", "suites": table,
           "total_checks": total, "total_failed": failed,
           "status": "pass" if failed == 0 else "FAIL"}
    emit(doc, args.format)
    return 0 if failed == 0 else 1


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhbv",
        description="Exact Hochschild cohomology of abelian group rings: "
                    "presentations, BV operator, brackets, verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_required=True):
        p.add_argument("-g", "--group", required=group_required, default="Z",
                       help='group spec, e.g. "Z/6", "Z/4 x Z/2", "Z^2"')
        p.add_argument("-r", "--ring", default="Z",
                       help='coefficient ring: "Z", "Q", "F_2", "Z/5"')
        p.add_argument("-d", "--degree", type=int, default=_default_degree(),
                       help="degree bound in [1, 8] (default 6; "
                            "HHBV_DEGREE_CAP overrides)")
        p.add_argument("-m", "--monomial", action="append",
                       help="monomial like x^3*y*z^2 (repeatable)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker pool size for verify")

    p = sub.add_parser("present", help="closed-form presentation document")
    common(p)
    p.set_defaults(fn=cmd_present)
    p = sub.add_parser("delta", help="BV operator on a monomial class")
    common(p)
    p.set_defaults(fn=cmd_delta)
    p = sub.add_parser("bracket", help="Gerstenhaber bracket of two classes")
    common(p)
    p.set_defaults(fn=cmd_bracket)
    p = sub.add_parser("homology", help="cohomology table over Z")
    common(p)
    p.set_defaults(fn=cmd_homology)
    p = sub.add_parser("compare", help="cross-route consistency matrix")
    common(p)
    p.set_defaults(fn=cmd_compare)
    p = sub.add_parser("verify", help="run verification suites")
    common(p, group_required=False)
    p.add_argument("--suite", action="append",
                   help="suite name (repeatable; default: all). Available: "
                        + ", ".join(sorted(verif.SUITES)))
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
