"""Exact arithmetic in the three supported coefficient rings: Z, Q and Z/m.

Values are kept canonically reduced at all times: integers are arbitrary
precision, rationals are `fractions.Fraction` (always in lowest terms with
positive denominator), and residues mod m live in [0, m).  Everything is
immutable, so values can be shared freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

RawValue = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Raised when two coefficients from different rings are combined."""


class NonUnitError(ValueError):
    """Raised when inverting an element that is not a unit in its ring."""


@dataclass(frozen=True)
class CoeffRing:
    """Tag for one of the supported ground rings.

    kind is "Z", "Q" or "Z/m"; modulus is set (and >= 2) only for "Z/m".
    """

    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Z/m"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Z/m":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Z/m needs a modulus >= 2")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind} takes no modulus")

    # -- raw value arithmetic ------------------------------------------

    def reduce(self, v: RawValue) -> RawValue:
        if self.kind == "Z":
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{v} is not an integer")
                v = v.numerator
            return int(v)
        if self.kind == "Q":
            return Fraction(v)
        return int(v) % self.modulus

    def add(self, a: RawValue, b: RawValue) -> RawValue:
        return self.reduce(a + b)

    def sub(self, a: RawValue, b: RawValue) -> RawValue:
        return self.reduce(a - b)

    def mul(self, a: RawValue, b: RawValue) -> RawValue:
        return self.reduce(a * b)

    def neg(self, a: RawValue) -> RawValue:
        return self.reduce(-a)

    def is_unit(self, a: RawValue) -> bool:
        a = self.reduce(a)
        if self.kind == "Z":
            return a in (1, -1)
        if self.kind == "Q":
            return a != 0
        try:
            pow(a, -1, self.modulus)
            return True
        except ValueError:
            return False

    def invert(self, a: RawValue) -> RawValue:
        a = self.reduce(a)
        if self.kind == "Z":
            if a not in (1, -1):
                raise NonUnitError(f"{a} is not a unit in Z")
            return a
        if self.kind == "Q":
            if a == 0:
                raise NonUnitError("0 is not a unit in Q")
            return Fraction(1) / a
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise NonUnitError(f"{a} is not a unit in Z/{self.modulus}") from None

    @property
    def zero(self) -> RawValue:
        return self.reduce(0)

    @property
    def one(self) -> RawValue:
        return self.reduce(1)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "Z/m" else 0

    def __str__(self):
        return f"Z/{self.modulus}" if self.kind == "Z/m" else self.kind


ZZ = CoeffRing("Z")
QQ = CoeffRing("Q")


def Zmod(m: int) -> CoeffRing:
    return CoeffRing("Z/m", m)


_RING_RE = re.compile(r"^(?:Z/(\d+)|F_?(\d+))$", re.IGNORECASE)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def parse_ring(spec: str) -> CoeffRing:
    """Parse a ring spec string: "Z", "Q", "Z/4" or "F_5" (alias for Z/5)."""
    s = spec.strip()
    if s.upper() == "Z":
        return ZZ
    if s.upper() == "Q":
        return QQ
    m = _RING_RE.match(s)
    if m is None:
        raise ValueError(f"cannot parse ring spec {spec!r}")
    if m.group(1) is not None:
        mod = int(m.group(1))
        if mod < 2:
            raise ValueError(f"modulus must be >= 2 in {spec!r}")
        return Zmod(mod)
    p = int(m.group(2))
    if not _is_prime(p):
        raise ValueError(f"{spec!r}: F_p requires a prime p (use Z/{p} for the ring)")
    return Zmod(p)


@dataclass(frozen=True)
class Coefficient:
    """A canonically reduced element of one of the supported rings."""

    ring: CoeffRing
    value: RawValue

    @staticmethod
    def of(ring: CoeffRing, v: RawValue) -> "Coefficient":
        return Coefficient(ring, ring.reduce(v))

    def _check(self, other: "Coefficient"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        return Coefficient(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Coefficient(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Coefficient(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return Coefficient(self.ring, self.ring.neg(self.value))

    def inverse(self) -> "Coefficient":
        return Coefficient(self.ring, self.ring.invert(self.value))

    def is_zero(self) -> bool:
        return self.value == self.ring.zero

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def __str__(self):
        return str(self.value)


def coeff_arith(op: str, x: Coefficient, y: Optional[Coefficient] = None) -> Coefficient:
    """Dispatch table used by the CLI: op in {add, mul, neg}."""
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"{op} needs two arguments")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def coeff_invert(x: Coefficient) -> Coefficient:
    return x.inverse()
