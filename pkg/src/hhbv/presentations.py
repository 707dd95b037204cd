"""Closed-form presentations of the cohomology rings, with Δ and bracket
tables, a monomial rewriter, and the two comparison isomorphisms
(truncated polynomial ring, free loop space of the circle).

Monomials are exponent tuples over an ordered generator list; polynomials
are dicts exponent-tuple -> raw coefficient.  Odd-degree generators
anticommute and carry square-reduction rules; degree-0 group-like
generators have multiplicative orders (or are Laurent); torsion relations
like n·z = 0 reduce coefficients of monomials containing z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .coeff import CoeffRing, RawValue, ZZ, Zmod
from .group_ring import GroupDescriptor, GroupRingElement, infinite_cyclic

Mono = Tuple[int, ...]
Poly = Dict[Mono, RawValue]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    order: Optional[int] = None      # multiplicative order: g^order = 1
    torsion: Optional[int] = None    # additive torsion: torsion * g = 0
    laurent: bool = False            # negative exponents allowed
    # square rule for odd generators: g^2 rewrites to this polynomial
    # ({} means g^2 = 0; None means no rule, g is a polynomial generator)
    square: Optional[Poly] = None


@dataclass
class GradedPresentation:
    """A graded-commutative presentation with closed-form Δ (and optionally
    a closed-form bracket) on normal monomials."""
    ring: CoeffRing
    generators: Tuple[Generator, ...]
    relations: Tuple[str, ...]
    delta_formula: Callable[["GradedPresentation", Mono], Poly]
    bracket_formula: Optional[Callable[["GradedPresentation", Mono, Mono], Poly]] = None
    hypotheses: Tuple[str, ...] = ()
    label: str = ""

    # -- basic structure ---------------------------------------------------

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(f"unknown generator {name!r}")

    def degree(self, mono: Mono) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def unit_mono(self) -> Mono:
        return (0,) * len(self.generators)

    def one(self) -> Poly:
        return {self.unit_mono(): self.ring.one}

    # -- normalization -----------------------------------------------------

    def _mono_sign(self, m1: Mono, m2: Mono) -> int:
        """Koszul sign for merging m1 · m2 into the fixed generator order."""
        odd = [i for i, g in enumerate(self.generators) if g.degree % 2 == 1]
        exp = 0
        for a in odd:
            if m2[a] % 2 == 0:
                continue
            exp += sum(m1[b] for b in odd if b > a)
        return -1 if exp % 2 else 1

    def mono_mul(self, m1: Mono, c1: RawValue, m2: Mono, c2: RawValue) -> Poly:
        sign = self._mono_sign(m1, m2)
        merged = tuple(a + b for a, b in zip(m1, m2))
        coeff = self.ring.mul(self.ring.mul(c1, c2), self.ring.reduce(sign))
        return self.normalize({merged: coeff})

    def mul(self, p1: Poly, p2: Poly) -> Poly:
        out: Poly = {}
        for m1, c1 in p1.items():
            for m2, c2 in p2.items():
                _accumulate(out, self.mono_mul(m1, c1, m2, c2), self.ring)
        return _prune(out, self.ring)

    def scale(self, p: Poly, c) -> Poly:
        cc = self.ring.reduce(c)
        return _prune({m: self.ring.mul(v, cc) for m, v in p.items()}, self.ring)

    def add(self, p1: Poly, p2: Poly) -> Poly:
        out = dict(p1)
        _accumulate(out, p2, self.ring)
        return _prune(out, self.ring)

    def sub(self, p1: Poly, p2: Poly) -> Poly:
        return self.add(p1, self.scale(p2, -1))

    def normalize(self, p: Poly) -> Poly:
        """Unique normal form: orders reduced, odd squares rewritten,
        torsion coefficients reduced."""
        work = dict(p)
        out: Poly = {}
        while work:
            mono, coeff = work.popitem()
            mono = list(mono)
            rewritten = False
            for i, g in enumerate(self.generators):
                if g.degree % 2 == 1 and g.square is not None and mono[i] >= 2:
                    if not g.square:
                        coeff = self.ring.zero
                        break
                    # replace one g^2 by its square rule
                    rest = tuple(mono[:i] + [mono[i] - 2] + mono[i + 1:])
                    for sm, sc in g.square.items():
                        prod = self.mono_mul(rest, coeff, sm, sc)
                        _accumulate(work, prod, self.ring)
                    rewritten = True
                    break
            if rewritten or coeff == self.ring.zero:
                continue
            for i, g in enumerate(self.generators):
                if g.order is not None:
                    mono[i] %= g.order
                elif not g.laurent and mono[i] < 0:
                    raise ValueError(
                        f"negative exponent on non-invertible generator {g.name}")
            modulus = 0
            for i, g in enumerate(self.generators):
                if g.torsion is not None and mono[i] > 0:
                    modulus = gcd(modulus, g.torsion)
            if modulus:
                if self.ring.kind == "Z":
                    coeff = coeff % modulus
                elif self.ring.kind == "Q":
                    coeff = coeff * 0  # torsion over the rationals is zero
                else:
                    coeff = coeff % gcd(modulus, self.ring.modulus)
            if coeff != self.ring.zero:
                key = tuple(mono)
                out[key] = self.ring.add(out.get(key, self.ring.zero), coeff)
        return _prune(out, self.ring)

    # -- Δ and brackets ----------------------------------------------------

    def delta_mono(self, mono: Mono) -> Poly:
        return self.normalize(self.delta_formula(self, mono))

    def delta(self, p: Poly) -> Poly:
        out: Poly = {}
        for m, c in p.items():
            _accumulate(out, self.scale(self.delta_mono(m), c), self.ring)
        return _prune(out, self.ring)

    def bracket(self, p1: Poly, p2: Poly) -> Poly:
        if self.bracket_formula is not None:
            out: Poly = {}
            for m1, c1 in p1.items():
                for m2, c2 in p2.items():
                    term = self.normalize(self.bracket_formula(self, m1, m2))
                    _accumulate(out, self.scale(term, self.ring.mul(c1, c2)),
                                self.ring)
            return _prune(out, self.ring)
        return self.bracket_via_delta(p1, p2)

    def bracket_via_delta(self, p1: Poly, p2: Poly) -> Poly:
        """{a,b} = -(-1)^{|a|}(Δ(ab) - Δ(a)b - (-1)^{|a|} aΔ(b)) on
        homogeneous inputs."""
        out: Poly = {}
        for m1, c1 in p1.items():
            for m2, c2 in p2.items():
                d1 = self.degree(m1)
                sa = -1 if d1 % 2 else 1
                a = {m1: c1}
                b = {m2: c2}
                inner = self.sub(self.delta(self.mul(a, b)),
                                 self.mul(self.delta(a), b))
                inner = self.sub(inner, self.scale(self.mul(a, self.delta(b)), sa))
                _accumulate(out, self.scale(inner, -sa), self.ring)
        return _prune(out, self.ring)

    # -- parsing and serialization ----------------------------------------

    def parse_monomial(self, text: str) -> Poly:
        """Grammar: `x^3*y*z^2` with `*` optional separators."""
        mono = [0] * len(self.generators)
        rest = text.strip()
        if rest in ("1", ""):
            return {tuple(mono): self.ring.one}
        pos = 0
        names = sorted((g.name for g in self.generators), key=len, reverse=True)
        while pos < len(rest):
            if rest[pos] in "* \t":
                pos += 1
                continue
            for name in names:
                if rest.startswith(name, pos):
                    pos += len(name)
                    exp = 1
                    if pos < len(rest) and rest[pos] == "^":
                        pos += 1
                        start = pos
                        if pos < len(rest) and rest[pos] == "-":
                            pos += 1
                        while pos < len(rest) and rest[pos].isdigit():
                            pos += 1
                        if start == pos:
                            raise ValueError(
                                f"expected exponent at position {start} in {text!r}")
                        exp = int(rest[start:pos])
                    mono[self.index(name)] += exp
                    break
            else:
                raise ValueError(f"cannot parse monomial {text!r} at position {pos}")
        return self.normalize({tuple(mono): self.ring.one})

    def format_poly(self, p: Poly) -> str:
        if not p:
            return "0"
        parts = []
        for mono in sorted(p):
            c = p[mono]
            word = "*".join(
                g.name + (f"^{e}" if e != 1 else "")
                for g, e in zip(self.generators, mono) if e != 0) or "1"
            parts.append(f"{c}*{word}" if c != self.ring.one or word == "1"
                         else word)
        return " + ".join(parts)

    def serialize(self, degree_cap: int = 6) -> dict:
        monos = [m for m in self.monomials_up_to(degree_cap)]
        return {
            "label": self.label,
            "ring": str(self.ring),
            "generators": [{"name": g.name, "degree": g.degree}
                           for g in self.generators],
            "relations": list(self.relations),
            "hypotheses": list(self.hypotheses),
            "delta": {self.format_poly({m: self.ring.one}):
                      self.format_poly(self.delta_mono(m))
                      for m in monos if self.degree(m) >= 1},
        }

    def monomials_up_to(self, degree_cap: int,
                        laurent_span: int = 2) -> List[Mono]:
        """All normal monomials of total degree <= degree_cap (Laurent
        exponents clipped to [-laurent_span, laurent_span])."""
        ranges = []
        for g in self.generators:
            if g.degree % 2 == 1 and g.square is not None:
                ranges.append(range(0, 2))
            elif g.degree % 2 == 1:
                ranges.append(range(0, degree_cap + 1))
            elif g.order is not None:
                ranges.append(range(0, g.order))
            elif g.laurent:
                ranges.append(range(-laurent_span, laurent_span + 1))
            else:
                cap = degree_cap // g.degree if g.degree else degree_cap
                ranges.append(range(0, cap + 1))
        out: List[Mono] = []

        def rec(i, acc, deg):
            if deg > degree_cap:
                return
            if i == len(self.generators):
                out.append(tuple(acc))
                return
            g = self.generators[i]
            for e in ranges[i]:
                rec(i + 1, acc + [e], deg + max(e, 0) * g.degree)

        rec(0, [], 0)
        return out


def _accumulate(target: Poly, source: Poly, ring: CoeffRing) -> None:
    for m, c in source.items():
        target[m] = ring.add(target.get(m, ring.zero), c)


def _prune(p: Poly, ring: CoeffRing) -> Poly:
    return {m: c for m, c in p.items() if c != ring.zero}


def poly_equal(pres: GradedPresentation, p1: Poly, p2: Poly) -> bool:
    return _prune(pres.normalize(p1), pres.ring) == _prune(pres.normalize(p2), pres.ring)


# -- cyclic groups ---------------------------------------------------------


def _cyclic_delta_charp(pres: GradedPresentation, mono: Mono) -> Poly:
    # generators (x, y, z); Δ(z^k x^l) = 0, Δ(z^k y x^l) = (l-1) z^k x^{l-1}
    l, e, k = mono
    if e == 0:
        return {}
    n = pres.generators[0].order
    coeff = pres.ring.reduce(l - 1)
    return {((l - 1) % n, 0, k): coeff}


def _cyclic_bracket_charp(pres: GradedPresentation, m1: Mono, m2: Mono) -> Poly:
    n = pres.generators[0].order
    (l1, e1, k1), (l2, e2, k2) = m1, m2
    if e1 == 0 and e2 == 0:
        return {}
    x_out = (l1 + l2 - 1) % n
    if e1 == 0:
        return {(x_out, 0, k1 + k2): pres.ring.reduce(-l1)}
    if e2 == 0:
        # graded antisymmetry off the previous case
        return {(x_out, 0, k1 + k2): pres.ring.reduce(l2)}
    return {(x_out, 1, k1 + k2): pres.ring.reduce(l2 - l1)}


def _zero_delta(pres: GradedPresentation, mono: Mono) -> Poly:
    return {}


def _zero_bracket(pres: GradedPresentation, m1: Mono, m2: Mono) -> Poly:
    return {}


def present_cyclic(ring: CoeffRing, n: int) -> GradedPresentation:
    """Cohomology presentation of R[Z/n] with Δ and bracket tables.

    Branches: integral domain (Z, Q) -> R[x,z]/(x^n-1, nz) with Δ = 0;
    prime characteristic p | n -> R[x,y,z]/(x^n-1, y^2[-x^{n-2}z]);
    prime characteristic p ∤ n -> R[x]/(x^n-1) with Δ = 0.
    """
    if n < 1:
        raise ValueError("n must be positive")
    hyps = []
    if ring.kind in ("Z", "Q"):
        hyps.append("coefficient ring is an integral domain of characteristic 0")
        hyps.append(f"characteristic does not divide n = {n}")
        gens = (Generator("x", 0, order=n), Generator("z", 2, torsion=n))
        return GradedPresentation(
            ring, gens, (f"x^{n} - 1", f"{n}*z"), _zero_delta, _zero_bracket,
            tuple(hyps), label=f"cyclic(n={n}) over {ring}")
    if ring.kind != "Z/m":
        raise ValueError(f"unsupported coefficient ring {ring}")
    p = ring.modulus
    if not _is_prime(p):
        raise ValueError(
            f"composite modulus {p}: no closed-form presentation is available")
    if n % p != 0:
        hyps.append(f"n = {n} is invertible modulo p = {p}")
        gens = (Generator("x", 0, order=n),)
        return GradedPresentation(
            ring, gens, (f"x^{n} - 1",), _zero_delta, _zero_bracket,
            tuple(hyps), label=f"cyclic(n={n}) over {ring}")
    m = n // p
    hyps.append(f"characteristic p = {p} is prime and divides n = {n} (m = {m})")
    if p == 2 and m % 2 == 1:
        square: Poly = {(n - 2, 0, 1): ring.one}
        relations = (f"x^{n} - 1", f"y^2 - x^{n - 2}*z")
        hyps.append("p = 2 with m odd: y^2 = x^{n-2} z branch")
    else:
        square = {}
        relations = (f"x^{n} - 1", "y^2")
        hyps.append("p odd, or p = 2 with m even: y^2 = 0 branch")
    gens = (Generator("x", 0, order=n),
            Generator("y", 1, square=square),
            Generator("z", 2))
    return GradedPresentation(
        ring, gens, relations, _cyclic_delta_charp, _cyclic_bracket_charp,
        tuple(hyps), label=f"cyclic(n={n}) over {ring}")


# -- the integral tensor Z[Z/n] ⊗ Z[Z/m] ----------------------------------


def _tensor_delta(pres: GradedPresentation, mono: Mono) -> Poly:
    # generators (x, t, a, b, c): Δ(x^i t^j a^l b^r c^s)
    #   = s x^{i-1} t^j a^l b^r ((i-1) b - j k a)
    i, j, l, r, s = mono
    if s == 0:
        return {}
    n = pres.generators[0].order
    k = pres.extra_k  # type: ignore[attr-defined]
    out: Poly = {}
    c1 = pres.ring.reduce(i - 1)
    if c1 != pres.ring.zero:
        out[((i - 1) % n, j, l, r + 1, 0)] = c1
    c2 = pres.ring.reduce(-j * k)
    if c2 != pres.ring.zero:
        key = ((i - 1) % n, j, l + 1, r, 0)
        out[key] = pres.ring.add(out.get(key, pres.ring.zero), c2)
    return out


def present_tensor_Z(n: int, m: int) -> GradedPresentation:
    """Integral presentation for Z[Z/n] ⊗ Z[Z/m] with m | n, generators
    x, t (degree 0), a, b (degree 2), c (degree 3) and the c^2 branch."""
    if m < 1 or n % m != 0:
        raise ValueError(f"m = {m} must divide n = {n}")
    k = n // m
    ring = ZZ
    if m % 2 == 0 and k % 2 == 1:
        half = m // 2
        square: Poly = {((n - 2) % n, 0, 1, 2, 0): half,
                        ((n - 2) % n, 0, 2, 1, 0): (half * k) % n}
        c2_str = f"c^2 - {half}*x^{n - 2}*a*b*(b + {k}*a)"
        branch = "m even and k odd: c^2 = (m/2) x^{n-2} a b (b + k a)"
    else:
        square = {}
        c2_str = "c^2"
        branch = "c^2 = 0 branch"
    gens = (Generator("x", 0, order=n), Generator("t", 0, order=m),
            Generator("a", 2, torsion=n), Generator("b", 2, torsion=m),
            Generator("c", 3, torsion=m, square=square))
    pres = GradedPresentation(
        ring, gens,
        (f"x^{n} - 1", f"t^{m} - 1", f"{n}*a", f"{m}*b", f"{m}*c", c2_str),
        _tensor_delta, None,
        (f"m = {m} divides n = {n} (k = {k})", branch),
        label=f"tensor(n={n}, m={m}) over Z")
    pres.extra_k = k  # type: ignore[attr-defined]
    return pres


# -- free abelian groups ---------------------------------------------------


def _free_abelian_delta(pres: GradedPresentation, mono: Mono) -> Poly:
    # generators (x_1..x_r, y_1..y_r):
    # Δ = Σ_k (-1)^{r_1+..+r_{k-1}} r_k (i_k - 1) ⋅ (x_k, y_k lowered)
    r = len(pres.generators) // 2
    xs, ys = mono[:r], mono[r:]
    out: Poly = {}
    for k in range(r):
        if ys[k] == 0:
            continue
        sign = -1 if sum(ys[:k]) % 2 else 1
        coeff = pres.ring.reduce(sign * (xs[k] - 1))
        if coeff == pres.ring.zero:
            continue
        nx = xs[:k] + (xs[k] - 1,) + xs[k + 1:]
        ny = ys[:k] + (0,) + ys[k + 1:]
        key = nx + ny
        out[key] = pres.ring.add(out.get(key, pres.ring.zero), coeff)
    return out


def present_free_abelian(rank: int, ring: CoeffRing = ZZ) -> GradedPresentation:
    """Laurent ⊗ exterior presentation for R[Z^rank] with the alternating
    closed-form Δ; bracket via the Δ-derivation identity."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    gens = tuple(Generator(f"x{i + 1}", 0, laurent=True) for i in range(rank)) \
        + tuple(Generator(f"y{i + 1}", 1, square={}) for i in range(rank))
    rels = tuple(f"y{i + 1}^2" for i in range(rank))
    return GradedPresentation(
        ring, gens, rels, _free_abelian_delta, None,
        ("free abelian: no finite-factor hypotheses",),
        label=f"free_abelian(rank={rank}) over {ring}")


# -- general finitely generated abelian groups ----------------------------


def _product_presentation(factors: Sequence[GradedPresentation],
                          ring: CoeffRing, label: str) -> GradedPresentation:
    """Tensor of presentations with Δ = Σ_f (±) id⊗..Δ^f..⊗id, the sign
    being the parity of the total degree of the part left of factor f."""
    gens: List[Generator] = []
    slices: List[Tuple[int, int]] = []
    rels: List[str] = []
    hyps: List[str] = []
    for idx, f in enumerate(factors):
        start = len(gens)
        suffix = "" if len(factors) == 1 else f"_{idx + 1}"
        renamed = [Generator(g.name + suffix, g.degree, g.order, g.torsion,
                             g.laurent,
                             None if g.square is None else dict(g.square))
                   for g in f.generators]
        gens.extend(renamed)
        slices.append((start, len(gens)))
        rels.extend(r if not suffix else f"[{idx + 1}] {r}" for r in f.relations)
        hyps.extend(f.hypotheses)
    total = len(gens)
    for idx, f in enumerate(factors):
        s, e = slices[idx]
        for local_i, g in enumerate(f.generators):
            gg = gens[s + local_i]
            if gg.square:
                lifted: Poly = {}
                for m, c in gg.square.items():
                    key = (0,) * s + m + (0,) * (total - e)
                    lifted[key] = c
                gens[s + local_i] = Generator(gg.name, gg.degree, gg.order,
                                              gg.torsion, gg.laurent, lifted)

    def delta(pres: GradedPresentation, mono: Mono) -> Poly:
        out: Poly = {}
        for idx, f in enumerate(factors):
            s, e = slices[idx]
            left_deg = sum(mono[i] * pres.generators[i].degree
                           for i in range(s))
            sign = -1 if left_deg % 2 else 1
            local = f.delta_formula(f, mono[s:e])
            for lm, lc in local.items():
                key = mono[:s] + lm + mono[e:]
                c = pres.ring.mul(pres.ring.reduce(sign), pres.ring.reduce(lc))
                out[key] = pres.ring.add(out.get(key, pres.ring.zero), c)
        return out

    pres = GradedPresentation(ring, tuple(gens), tuple(rels), delta, None,
                              tuple(hyps), label=label)
    pres.factor_slices = slices  # type: ignore[attr-defined]
    return pres


def present_fg_abelian(group: GroupDescriptor, ring: CoeffRing) -> GradedPresentation:
    """Presentation for R[G], G finitely generated abelian, as the signed
    tensor of the free and cyclic factor presentations."""
    r = group.free_rank
    torsion = tuple(group.torsion_orders)
    if not torsion:
        return present_free_abelian(r, ring)
    if r == 0 and len(torsion) == 1:
        return present_cyclic(ring, torsion[0])
    if r == 0 and len(torsion) == 2 and ring == ZZ:
        n, m = torsion
        if n % m == 0:
            return present_tensor_Z(n, m)
        raise ValueError(
            f"integral tensor needs the second order to divide the first; "
            f"got {torsion}")
    if ring.kind == "Z/m":
        if not _is_prime(ring.modulus):
            raise ValueError("finite factors over Z/m need m prime")
    elif ring.kind != "Q":
        raise ValueError(
            "groups with both free and torsion parts (or >2 torsion factors) "
            "need a field coefficient ring")
    factors: List[GradedPresentation] = []
    if r:
        factors.append(present_free_abelian(r, ring))
    for n in torsion:
        factors.append(present_cyclic(ring, n))
    return _product_presentation(
        factors, ring, label=f"fg_abelian({group.free_rank}, {torsion}) over {ring}")


# -- comparison isomorphisms ----------------------------------------------


@dataclass
class IsoReport:
    name: str
    ok: bool
    checks: List[Tuple[str, bool]] = field(default_factory=list)

    def add(self, label: str, good: bool) -> None:
        self.checks.append((label, good))
        self.ok = self.ok and good


def _truncated_delta_odd(pres: GradedPresentation, mono: Mono) -> Poly:
    # generators (x, v, t), p odd: Δ̃(t^k x^l) = 0 and
    # Δ̃(t^k v x^l) = l t^k x^{l-1} + Σ_{i=l}^{p-1} s_i t^k x^i where the
    # alternating tail starts at s_l = -1 regardless of the parity of l
    xexp, v, t = mono
    if v == 0:
        return {}
    p = pres.generators[0].order
    out: Poly = {}
    if xexp >= 1:
        out[(xexp - 1, 0, t)] = pres.ring.reduce(xexp)
    for i in range(xexp, p):
        s = -1 if (i - xexp) % 2 == 0 else 1
        key = (i, 0, t)
        out[key] = pres.ring.add(out.get(key, pres.ring.zero),
                                 pres.ring.reduce(s))
    return out


def _truncated_delta_two(pres: GradedPresentation, mono: Mono) -> Poly:
    # generators (x, v), p = 2: Δ̃(v^k x^l) = k (1 + x) v^{k-1}
    xexp, v = mono
    k = pres.ring.reduce(v)
    if v == 0 or k == pres.ring.zero:
        return {}
    return {(0, v - 1): k, (1, v - 1): k}


def truncated_polynomial_presentation(p: int) -> GradedPresentation:
    """BV presentation for the square-zero extension F_p[x]/(x^p) in degree
    0: F_p[x,v,t]/(x^p, v^2) for p odd, F_2[x,v]/(x^2) with v polynomial
    (v^2 represents the degree-2 generator) for p = 2."""
    ring = Zmod(p)
    if p == 2:
        gens = (Generator("x", 0, order=2), Generator("v", 1))
        return GradedPresentation(
            ring, gens, ("x^2", "v^2 - t"), _truncated_delta_two, None,
            ("p = 2",), label="truncated(p=2)")
    gens = (Generator("x", 0, order=p), Generator("v", 1, square={}),
            Generator("t", 2))
    return GradedPresentation(
        ring, gens, (f"x^{p}", "v^2"), _truncated_delta_odd, None,
        (f"p = {p} odd prime",), label=f"truncated(p={p})")


def truncated_poly_iso(p: int, degree_cap: int = 6) -> IsoReport:
    """Transport check between the truncated-polynomial BV table and the
    cyclic group-ring table under x -> x-1, v -> y, t -> z; includes the
    binomial collapse identity used to telescope the alternating tails."""
    if not _is_prime(p):
        raise ValueError("p must be prime")
    ring = Zmod(p)
    report = IsoReport(f"truncated_poly_iso(p={p})", True)

    # Σ_{i=k}^{p-1} C(i,k) = C(p, k+1) ≡ 0 mod p whenever 0 < k+1 < p
    for k in range(p - 1):
        total = sum(comb(i, k) for i in range(k, p))
        report.add(f"binomial collapse k={k}",
                   total == comb(p, k + 1) and total % p == 0)

    source = truncated_polynomial_presentation(p)
    target = present_cyclic(ring, p)
    xm1: Poly = {(1, 0, 0): ring.one, (0, 0, 0): ring.reduce(-1)}

    def phi(poly: Poly) -> Poly:
        # x -> x-1, v -> y, t -> z (for p = 2 the v exponent lands on y and
        # the target square rule y^2 = z absorbs even powers)
        out: Poly = {}
        for m, c in poly.items():
            if p == 2:
                xexp, vexp = m
                texp = 0
            else:
                xexp, vexp, texp = m
            img: Poly = {(0, vexp, texp): ring.one}
            for _ in range(xexp):
                img = target.mul(img, xm1)
            for im, ic in target.scale(img, c).items():
                out[im] = ring.add(out.get(im, ring.zero), ic)
        return target.normalize(out)

    if p == 2:
        monos = [(xexp, vexp) for vexp in range(degree_cap + 1)
                 for xexp in range(2)]
    else:
        monos = [(xexp, vexp, texp)
                 for texp in range(degree_cap // 2 + 1)
                 for vexp in range(2) for xexp in range(p)
                 if 2 * texp + vexp <= degree_cap]
    for m in monos:
        lhs = phi(source.delta_mono(m))
        rhs = target.delta(phi({m: ring.one}))
        report.add(f"mono {m}", poly_equal(target, lhs, rhs))
    return report


def loop_space_iso(ring: CoeffRing = ZZ, span: int = 4) -> IsoReport:
    """Transport check between the circle free-loop-space BV table
    Δ(z^r x^i) = r i x^i and the group ring of the integers with the
    transferred operator for the unit t^{-1}; x -> x, z -> y x."""
    from .bv_engine import ZMonomial, delta_transferred
    report = IsoReport("loop_space_iso", True)
    group = infinite_cyclic()
    for rr in range(0, 2):
        for i in range(-span, span + 1):
            # φ Δ(z^r x^i) = r i x^i
            lhs = GroupRingElement.monomial(group, ring, group.make((i,), ())) \
                .scale(ring.reduce(rr * i))
            # Δ̃(φ(z^r x^i)) = Δ̃(y^r x^{i+r}) via the honest transfer
            _, rhs = delta_transferred(ring, ring.one, -1, ZMonomial(rr, i + rr))
            report.add(f"z^{rr} x^{i}", lhs == rhs)
    return report
