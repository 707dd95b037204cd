"""Bounded complexes of finite-rank free modules over Z or Z/m.

Differentials are dense integer matrices; homology is computed exactly via
Smith normal form.  Chain convention throughout: boundary[k] maps degree k
to degree k-1.  Cochain complexes are stored with negated degrees (see
`cochain_complex`), so a single homology routine serves both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from .coeff import CoeffRing, ZZ


class IntMatrix:
    """Dense matrix over Z or Z/m with exact entries."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: CoeffRing, entries: List[List[int]],
                 rows: Optional[int] = None, cols: Optional[int] = None):
        if ring.kind == "Q":
            raise ValueError("IntMatrix is over Z or Z/m only")
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = [[ring.reduce(v) for v in row] for row in entries]
        for row in self.entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")

    @staticmethod
    def zero(ring: CoeffRing, rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(ring, [[0] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(ring: CoeffRing, n: int) -> "IntMatrix":
        m = IntMatrix.zero(ring, n, n)
        for i in range(n):
            m.entries[i][i] = ring.reduce(1)
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.ring, [row[:] for row in self.entries], self.rows, self.cols)

    def __getitem__(self, rc: Tuple[int, int]) -> int:
        return self.entries[rc[0]][rc[1]]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.ring == other.ring
                and self.entries == other.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows or self.ring != other.ring:
            raise ValueError("shape/ring mismatch")
        ring = self.ring
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                v = row[k]
                if v == 0:
                    continue
                orow = other.entries[k]
                trow = out[i]
                for j in range(other.cols):
                    trow[j] += v * orow[j]
        return IntMatrix(ring, out, self.rows, other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.ring, [[self.entries[i][j] for i in range(self.rows)]
                                     for j in range(self.cols)], self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(v == self.ring.zero for row in self.entries for v in row)

    def column(self, j: int) -> List[int]:
        return [self.entries[i][j] for i in range(self.rows)]

    def scale_int(self, f: int) -> "IntMatrix":
        return IntMatrix(self.ring, [[f * v for v in row] for row in self.entries],
                         self.rows, self.cols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix(self.ring, [self.entries[i] + other.entries[i] for i in range(self.rows)],
                         self.rows, self.cols + other.cols)

    def det(self) -> int:
        """Exact determinant (fraction-free, small matrices only)."""
        if self.rows != self.cols:
            raise ValueError("square matrices only")
        n = self.rows
        m = [[Fraction(v) for v in row] for row in self.entries]
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] * inv
                if f:
                    for j in range(c, n):
                        m[r][j] -= f * m[c][j]
        assert det.denominator == 1
        return int(det)

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)

    def serialize(self) -> dict:
        return {"ring": str(self.ring), "rows": self.rows, "cols": self.cols,
                "entries": [str(v) for row in self.entries for v in row]}


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """U, D, V with U m V = D diagonal, d_1 | d_2 | ... >= 0, U, V unimodular."""
    if m.ring != ZZ:
        raise ValueError("Smith normal form over Z only")
    rows, cols = m.rows, m.cols
    a = [row[:] for row in m.entries]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        arow, urow = a[src], u[src]
        for j in range(cols):
            a[dst][j] += f * arow[j]
        for j in range(rows):
            u[dst][j] += f * urow[j]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # pivot: smallest nonzero absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                val = abs(a[i][j])
                if val and (best is None or val < best):
                    best = val
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block by the pivot
            offender = None
            d = a[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            for j in range(cols):
                a[t][j] = -a[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1

    return (IntMatrix(ZZ, u, rows, rows), IntMatrix(ZZ, a, rows, cols),
            IntMatrix(ZZ, v, cols, cols))


def _inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    n = m.rows
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m.entries)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return IntMatrix(ZZ, [[int(x) for x in row] for row in out], n, n)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns forming a Z-basis of ker(m) for an integer matrix."""
    u, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(d.rows, d.cols)) if d.entries[i][i])
    cols = [v.column(j) for j in range(rank, m.cols)]
    entries = [[col[i] for col in cols] for i in range(m.cols)]
    return IntMatrix(ZZ, entries, m.cols, len(cols))


def solve_columns(k: IntMatrix, a: IntMatrix) -> IntMatrix:
    """Integer solution X of K X = A; raises if some column is unsolvable."""
    u, d, v = smith_normal_form(k)
    y = u @ a
    x_pre = [[0] * a.cols for _ in range(k.cols)]
    rank = sum(1 for i in range(min(d.rows, d.cols)) if d.entries[i][i])
    for j in range(a.cols):
        for i in range(k.rows):
            if i < rank:
                q, r = divmod(y.entries[i][j], d.entries[i][i])
                if r:
                    raise ValueError("column not in the lattice")
                x_pre[i][j] = q
            elif y.entries[i][j]:
                raise ValueError("column not in the lattice")
    return v @ IntMatrix(ZZ, x_pre, k.cols, a.cols)


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """Basis of the column lattice spanned by the given generators."""
    u, d, v = smith_normal_form(gens)
    uinv = _inverse_unimodular(u)
    cols = []
    for i in range(min(d.rows, d.cols)):
        di = d.entries[i][i]
        if di:
            cols.append([di * uinv.entries[r][i] for r in range(gens.rows)])
    entries = [[col[r] for col in cols] for r in range(gens.rows)]
    return IntMatrix(ZZ, entries, gens.rows, len(cols))


@dataclass
class HomologySummary:
    degree: int
    free_rank: int
    torsion: List[int]
    representatives: List[List[int]] = field(default_factory=list)

    def group_string(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"Z/{d}")
        return " + ".join(parts) if parts else "0"

    def elementary_divisors(self) -> List[int]:
        """Prime-power decomposition of the torsion, sorted (structure invariant)."""
        out = []
        for d in self.torsion:
            rest = d
            p = 2
            while p * p <= rest:
                if rest % p == 0:
                    q = 1
                    while rest % p == 0:
                        rest //= p
                        q *= p
                    out.append(q)
                p += 1
            if rest > 1:
                out.append(rest)
        return sorted(out)

    def serialize(self) -> dict:
        return {"degree": self.degree, "free_rank": str(self.free_rank),
                "torsion": [str(t) for t in self.torsion],
                "group": self.group_string(),
                "representatives": [[str(v) for v in r] for r in self.representatives]}


class FreeComplex:
    """Bounded complex of free modules; boundary[k] : C_k -> C_{k-1}."""

    def __init__(self, ring: CoeffRing, ranks: Dict[int, int],
                 boundary: Dict[int, IntMatrix]):
        self.ring = ring
        self.ranks = dict(ranks)
        self.boundary = dict(boundary)
        for k, m in self.boundary.items():
            if m.cols != self.ranks.get(k, 0) or m.rows != self.ranks.get(k - 1, 0):
                raise ValueError(f"boundary shape mismatch at degree {k}")
            if m.ring != ring:
                raise ValueError("boundary ring mismatch")
        for k, m in self.boundary.items():
            below = self.boundary.get(k - 1)
            if below is not None and not (below @ m).is_zero():
                raise ValueError(f"d∘d != 0 at degree {k}")

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def diff(self, k: int) -> IntMatrix:
        """boundary[k], defaulting to the zero map of the right shape."""
        m = self.boundary.get(k)
        if m is None:
            m = IntMatrix.zero(self.ring, self.rank(k - 1), self.rank(k))
        return m

    @property
    def degrees(self) -> List[int]:
        return sorted(self.ranks)

    def serialize(self) -> dict:
        return {"ring": str(self.ring),
                "ranks": {str(k): v for k, v in sorted(self.ranks.items())},
                "boundary": {str(k): m.serialize() for k, m in sorted(self.boundary.items())}}


def homology_at(c: FreeComplex, k: int) -> HomologySummary:
    """ker(d_k) / im(d_{k+1}) as free rank, invariant factors and representatives."""
    rk = c.rank(k)
    if rk == 0:
        return HomologySummary(k, 0, [])
    b = c.diff(k)
    a = c.diff(k + 1)
    if c.ring == ZZ:
        cyc = kernel_basis(b)
        bnd_gens = a
    elif c.ring.kind == "Z/m":
        m = c.ring.modulus
        b_lift = IntMatrix(ZZ, [[int(v) for v in row] for row in b.entries], b.rows, b.cols)
        a_lift = IntMatrix(ZZ, [[int(v) for v in row] for row in a.entries], a.rows, a.cols)
        # cycles mod m: project ker[B | mI] to the first block
        aug = b_lift.hstack(IntMatrix.identity(ZZ, b.rows).scale_int(m))
        full_ker = kernel_basis(aug)
        proj = IntMatrix(ZZ, [full_ker.entries[i] for i in range(b.cols)], b.cols, full_ker.cols)
        cyc = lattice_basis(proj)
        # boundaries: im(A) + m * C_k
        bnd_gens = a_lift.hstack(IntMatrix.identity(ZZ, rk).scale_int(m))
    else:
        raise ValueError("homology over Z or Z/m only")

    z = cyc.cols
    if z == 0:
        return HomologySummary(k, 0, [])
    x = solve_columns(cyc, bnd_gens)
    u2, d2, v2 = smith_normal_form(x)
    new_basis = cyc @ _inverse_unimodular(u2)
    rank_x = sum(1 for i in range(min(d2.rows, d2.cols)) if d2.entries[i][i])
    torsion = []
    reps = []
    for i in range(rank_x):
        di = d2.entries[i][i]
        if di > 1:
            torsion.append(di)
            reps.append(new_basis.column(i))
    free_rank = z - rank_x
    for i in range(rank_x, z):
        reps.append(new_basis.column(i))
    if c.ring.kind == "Z/m":
        m = c.ring.modulus
        reps = [[v % m for v in r] for r in reps]
    return HomologySummary(k, free_rank, torsion, reps)


def cochain_complex(ring: CoeffRing, ranks: Dict[int, int],
                    differential: Dict[int, IntMatrix]) -> FreeComplex:
    """Encode a cochain complex (differential[i] : C^i -> C^{i+1}) as a
    FreeComplex on negated degrees, so cohomology^i = homology at -i."""
    return FreeComplex(ring, {-i: r for i, r in ranks.items()},
                       {-i: m for i, m in differential.items()})


def cohomology_at(c: FreeComplex, i: int) -> HomologySummary:
    out = homology_at(c, -i)
    out.degree = i
    return out


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    ring = a.ring
    out = [[0] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            v = a.entries[i][j]
            if v == 0:
                continue
            for p in range(b.rows):
                for q in range(b.cols):
                    out[i * b.rows + p][j * b.cols + q] = ring.mul(v, b.entries[p][q])
    return IntMatrix(ring, out, a.rows * b.rows, a.cols * b.cols)


def tensor_total_complex(a: FreeComplex, b: FreeComplex) -> FreeComplex:
    """Total complex of a tensor product with the Koszul sign
    d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy.  Summands at total degree k are
    ordered by first-factor degree descending."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    ring = a.ring
    a_degs = a.degrees
    b_degs = b.degrees
    summands: Dict[int, List[Tuple[int, int]]] = {}
    for i in a_degs:
        for j in b_degs:
            summands.setdefault(i + j, []).append((i, j))
    for k in summands:
        summands[k].sort(key=lambda ij: -ij[0])
    ranks = {k: sum(a.rank(i) * b.rank(j) for i, j in s) for k, s in summands.items()}

    def offsets(k: int) -> Dict[Tuple[int, int], int]:
        out = {}
        pos = 0
        for i, j in summands.get(k, []):
            out[(i, j)] = pos
            pos += a.rank(i) * b.rank(j)
        return out

    boundary = {}
    for k in sorted(summands):
        if k - 1 not in summands:
            continue
        src_off = offsets(k)
        dst_off = offsets(k - 1)
        mat = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for (i, j), so in src_off.items():
            ra, rb = a.rank(i), b.rank(j)
            if (i - 1, j) in dst_off:
                blk = kronecker(a.diff(i), IntMatrix.identity(ring, rb))
                do = dst_off[(i - 1, j)]
                for r in range(blk.rows):
                    for cidx in range(blk.cols):
                        v = blk.entries[r][cidx]
                        if v:
                            mat[do + r][so + cidx] = ring.add(mat[do + r][so + cidx], v)
            if (i, j - 1) in dst_off:
                sign = -1 if i % 2 else 1
                blk = kronecker(IntMatrix.identity(ring, ra), b.diff(j))
                do = dst_off[(i, j - 1)]
                for r in range(blk.rows):
                    for cidx in range(blk.cols):
                        v = blk.entries[r][cidx]
                        if v:
                            mat[do + r][so + cidx] = ring.add(mat[do + r][so + cidx],
                                                             ring.mul(sign, v))
        boundary[k] = IntMatrix(ring, mat, ranks[k - 1], ranks[k])
    return FreeComplex(ring, ranks, boundary)


def _cyclic_mult_matrix(n: int, scalar: int) -> IntMatrix:
    """Matrix of multiplication by scalar * x^{n-1} on Z[Z/n] in the power basis."""
    m = IntMatrix.zero(ZZ, n, n)
    for i in range(n):
        m.entries[(i + n - 1) % n][i] = scalar
    return m


def tor_one(n: int, m: int) -> HomologySummary:
    """Tor_1 over Z of Z[Z/n]/(n x^{n-1}) against Z[Z/m]/(m t^{m-1}),
    computed as the kernel of n x^{n-1} ⊗ id on A ⊗ (B / m t^{m-1} B)."""
    if m == 1:
        return HomologySummary(0, 0, [])
    from .coeff import Zmod
    ring = Zmod(m)
    nmat = _cyclic_mult_matrix(n, n)
    big = kronecker(IntMatrix(ring, [[v % m for v in row] for row in nmat.entries]),
                    IntMatrix.identity(ring, m))
    cx = FreeComplex(ring, {0: n * m, 1: n * m}, {1: big})
    out = homology_at(cx, 1)
    out.degree = 1
    return out
