"""The group algebra R[G] for a finitely generated abelian group G.

G is described by a free rank r and a list of torsion orders, so elements
are vectors (free part in Z^r, torsion part reduced componentwise).  Group
ring elements are finitely supported maps from group elements to nonzero
ring values; multiplication is convolution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Tuple

from .coeff import Coefficient, CoeffRing, RawValue, RingMismatchError


@dataclass(frozen=True)
class GroupDescriptor:
    free_rank: int
    torsion_orders: Tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        for n in self.torsion_orders:
            if n < 2:
                raise ValueError("torsion orders must be >= 2")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite group")
        out = 1
        for n in self.torsion_orders:
            out *= n
        return out

    def identity(self) -> "GroupElement":
        return GroupElement((0,) * self.free_rank, (0,) * len(self.torsion_orders))

    def make(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> "GroupElement":
        free = tuple(int(v) for v in free)
        tors = tuple(int(v) for v in torsion)
        if len(free) != self.free_rank or len(tors) != len(self.torsion_orders):
            raise ValueError("component count mismatch")
        tors = tuple(v % n for v, n in zip(tors, self.torsion_orders))
        return GroupElement(free, tors)

    def mul(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        free = tuple(a + b for a, b in zip(g.free, h.free))
        tors = tuple((a + b) % n for a, b, n in zip(g.torsion, h.torsion, self.torsion_orders))
        return GroupElement(free, tors)

    def inverse(self, g: "GroupElement") -> "GroupElement":
        free = tuple(-a for a in g.free)
        tors = tuple((-a) % n for a, n in zip(g.torsion, self.torsion_orders))
        return GroupElement(free, tors)

    def power(self, g: "GroupElement", k: int) -> "GroupElement":
        free = tuple(k * a for a in g.free)
        tors = tuple((k * a) % n for a, n in zip(g.torsion, self.torsion_orders))
        return GroupElement(free, tors)

    def elements(self) -> List["GroupElement"]:
        """All elements of a finite group, in lexicographic torsion order."""
        if not self.is_finite:
            raise ValueError("infinite group")
        return [GroupElement((), tors) for tors in product(*(range(n) for n in self.torsion_orders))]

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion_orders]
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    free: Tuple[int, ...]
    torsion: Tuple[int, ...]

    def is_identity(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def serialize(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}


def cyclic(n: int) -> GroupDescriptor:
    return GroupDescriptor(0, (n,))


def infinite_cyclic() -> GroupDescriptor:
    return GroupDescriptor(1, ())


_FACTOR_RE = re.compile(r"^(?:Z\^(\d+)|Z/(\d+)|Z)$", re.IGNORECASE)


def parse_group(spec: str) -> GroupDescriptor:
    """Parse a group spec like "Z^2 x Z/4 x Z/2" ('×' also accepted)."""
    s = spec.replace("×", "x").strip()
    free = 0
    torsion: List[int] = []
    if s in ("", "0", "1"):
        return GroupDescriptor(0, ())
    for part in re.split(r"\s*x\s*", s, flags=re.IGNORECASE):
        m = _FACTOR_RE.match(part.strip())
        if m is None:
            raise ValueError(f"cannot parse group factor {part!r} in {spec!r}")
        if m.group(1) is not None:
            free += int(m.group(1))
        elif m.group(2) is not None:
            n = int(m.group(2))
            if n < 2:
                raise ValueError(f"torsion order must be >= 2 in {spec!r}")
            torsion.append(n)
        else:
            free += 1
    return GroupDescriptor(free, tuple(torsion))


class GroupRingElement:
    """Finitely supported R-linear combination of group elements."""

    __slots__ = ("group", "ring", "support")

    def __init__(self, group: GroupDescriptor, ring: CoeffRing,
                 support: Dict[GroupElement, RawValue] = None, _reduced: bool = False):
        self.group = group
        self.ring = ring
        if support is None:
            support = {}
        if not _reduced:
            clean = {}
            for g, v in support.items():
                v = ring.reduce(v)
                if v != ring.zero:
                    clean[g] = v
            support = clean
        self.support = support

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(group: GroupDescriptor, ring: CoeffRing) -> "GroupRingElement":
        return GroupRingElement(group, ring, {}, _reduced=True)

    @staticmethod
    def monomial(group: GroupDescriptor, ring: CoeffRing, g: GroupElement,
                 coeff: RawValue = 1) -> "GroupRingElement":
        return GroupRingElement(group, ring, {g: coeff})

    @staticmethod
    def one(group: GroupDescriptor, ring: CoeffRing) -> "GroupRingElement":
        return GroupRingElement.monomial(group, ring, group.identity())

    def _check(self, other: "GroupRingElement"):
        if self.group != other.group or self.ring != other.ring:
            raise RingMismatchError("group ring mismatch")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = dict(self.support)
        ring = self.ring
        for g, v in other.support.items():
            w = ring.add(out.get(g, ring.zero), v)
            if w == ring.zero:
                out.pop(g, None)
            else:
                out[g] = w
        return GroupRingElement(self.group, ring, out, _reduced=True)

    def __neg__(self) -> "GroupRingElement":
        ring = self.ring
        return GroupRingElement(self.group, ring,
                                {g: ring.neg(v) for g, v in self.support.items()},
                                _reduced=True)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, c: RawValue) -> "GroupRingElement":
        ring = self.ring
        c = ring.reduce(c)
        out = {}
        for g, v in self.support.items():
            w = ring.mul(v, c)
            if w != ring.zero:
                out[g] = w
        return GroupRingElement(self.group, ring, out, _reduced=True)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        ring = self.ring
        grp = self.group
        out: Dict[GroupElement, RawValue] = {}
        for g, v in self.support.items():
            for h, w in other.support.items():
                k = grp.mul(g, h)
                u = ring.add(out.get(k, ring.zero), ring.mul(v, w))
                if u == ring.zero:
                    out.pop(k, None)
                else:
                    out[k] = u
        return GroupRingElement(grp, ring, out, _reduced=True)

    def translate(self, g: GroupElement) -> "GroupRingElement":
        """Multiply by the basis element g."""
        grp = self.group
        return GroupRingElement(grp, self.ring,
                                {grp.mul(h, g): v for h, v in self.support.items()},
                                _reduced=True)

    def is_zero(self) -> bool:
        return not self.support

    def coefficient(self, g: GroupElement) -> RawValue:
        return self.support.get(g, self.ring.zero)

    def __eq__(self, other):
        return (isinstance(other, GroupRingElement) and self.group == other.group
                and self.ring == other.ring and self.support == other.support)

    def __hash__(self):
        return hash((self.group, self.ring, frozenset(self.support.items())))

    def sorted_terms(self) -> List[Tuple[GroupElement, RawValue]]:
        return sorted(self.support.items(), key=lambda kv: (kv[0].free, kv[0].torsion))

    def __str__(self):
        if not self.support:
            return "0"
        parts = []
        for g, v in self.sorted_terms():
            if g.is_identity():
                parts.append(str(v))
            else:
                gens = []
                for i, e in enumerate(g.free):
                    if e:
                        gens.append(f"t{i}^{e}" if e != 1 else f"t{i}")
                for i, e in enumerate(g.torsion):
                    if e:
                        gens.append(f"s{i}^{e}" if e != 1 else f"s{i}")
                word = "*".join(gens)
                parts.append(word if v == 1 else f"{v}*{word}")
        return " + ".join(parts)

    __repr__ = __str__

    def serialize(self) -> list:
        return [{"elt": g.serialize(), "coeff": str(v)} for g, v in self.sorted_terms()]


def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def augmentation(a: GroupRingElement) -> Coefficient:
    """Coefficient of the identity element."""
    return Coefficient(a.ring, a.coefficient(a.group.identity()))


def frobenius_pair(a: GroupRingElement, b: GroupRingElement) -> Coefficient:
    """The canonical Frobenius form <a, b> = augmentation(a * b)."""
    if not a.group.is_finite:
        raise ValueError("Frobenius form undefined for infinite group")
    a._check(b)
    ring = a.ring
    grp = a.group
    total = ring.zero
    for g, v in a.support.items():
        w = b.coefficient(grp.inverse(g))
        if w != ring.zero:
            total = ring.add(total, ring.mul(v, w))
    return Coefficient(ring, total)


def dual_basis(group: GroupDescriptor) -> List[Tuple[GroupElement, GroupElement]]:
    """Pairs (g, g^{-1}); the dual basis of the group basis under the form."""
    if not group.is_finite:
        raise ValueError("Frobenius form undefined for infinite group")
    return [(g, group.inverse(g)) for g in group.elements()]


def sigma(group: GroupDescriptor, ring: CoeffRing, power: int = 1,
          factor: int = 0) -> GroupRingElement:
    """sigma^power on the given torsion factor, as a group ring element."""
    tors = [0] * len(group.torsion_orders)
    tors[factor] = power
    return GroupRingElement.monomial(group, ring, group.make((), tors))


def t_power(group: GroupDescriptor, ring: CoeffRing, power: int = 1,
            factor: int = 0) -> GroupRingElement:
    """t^power on the given free factor."""
    free = [0] * group.free_rank
    free[factor] = power
    return GroupRingElement.monomial(group, ring, group.make(free, ()))
