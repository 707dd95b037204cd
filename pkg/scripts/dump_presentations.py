#!/usr/bin/env python3
"""Print the cohomology presentation and a BV-operator table for a grid of
groups and coefficient rings.

Useful for eyeballing how the ring structure and the operator Delta change
across the branches (integral domain, p | n, p coprime to n, tensor products).
"""

import argparse
import sys

from hhbv.coeff import parse_ring
from hhbv.group_ring import parse_group
from hhbv.presentations import present_fg_abelian

DEFAULT_GRID = [
    ("Z/4", "Z"), ("Z/4", "Q"), ("Z/4", "F_2"), ("Z/6", "F_2"),
    ("Z/6", "F_3"), ("Z/5", "F_3"), ("Z/4 x Z/2", "Z"), ("Z/6 x Z/3", "Z"),
]


def dump(group_s: str, ring_s: str, cap: int) -> None:
    ring = parse_ring(ring_s)
    pr = present_fg_abelian(parse_group(group_s), ring)
    print(f"== {group_s} over {ring_s}  ({pr.label})")
    print("   generators:", ", ".join(
        f"{g.name} (deg {g.degree})" for g in pr.generators))
    if pr.relations:
        print("   relations: ", ", ".join(pr.relations))
    for h in pr.hypotheses:
        print("   note:", h)
    rows = []
    for mono in pr.monomials_up_to(cap):
        image = pr.delta_mono(mono)
        if image:
            rows.append((pr.format_poly({mono: ring.one}),
                         pr.format_poly(image)))
    if rows:
        width = max(len(r[0]) for r in rows)
        for src, dst in rows:
            print(f"   Delta({src:<{width}}) = {dst}")
    else:
        print("   Delta = 0 on all monomials up to degree", cap)
    print()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-g", "--group", help="group, e.g. 'Z/6' or 'Z/4 x Z/2'")
    ap.add_argument("-r", "--ring", default="Z",
                    help="coefficient ring: Z, Q, F_p (default Z)")
    ap.add_argument("-d", "--degree", type=int, default=4,
                    help="degree cap for the Delta table (default 4)")
    args = ap.parse_args()

    grid = [(args.group, args.ring)] if args.group else DEFAULT_GRID
    for group_s, ring_s in grid:
        dump(group_s, ring_s, args.degree)
    return 0


if __name__ == "__main__":
    sys.exit(main())
