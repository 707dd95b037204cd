"""Smith normal form and homology machinery, with oracle checks."""

from fractions import Fraction
from math import gcd

from hypothesis import given, settings, strategies as st

from hhbv.chain_complex import (FreeComplex, IntMatrix, _cyclic_mult_matrix,
                                cochain_complex, cohomology_at, homology_at,
                                kernel_basis, kronecker, lattice_basis,
                                smith_normal_form, solve_columns,
                                tensor_total_complex, tor_one)
from hhbv.coeff import ZZ


small_matrices = st.builds(
    lambda rows, cols, flat: IntMatrix(
        ZZ, [flat[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols),
    st.integers(1, 4), st.integers(1, 4),
    st.lists(st.integers(-9, 9), min_size=16, max_size=16))


def _det(entries):
    n = len(entries)
    if n == 1:
        return Fraction(entries[0][0])
    a = [[Fraction(v) for v in row] for row in entries]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
    return det


def _minor_gcd(m: IntMatrix, k: int) -> int:
    """k-th determinantal divisor: gcd of all k x k minors."""
    from itertools import combinations
    g = 0
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            sub = [[m.entries[r][c] for c in cols] for r in rows]
            g = gcd(g, int(_det(sub)))
    return g


@settings(max_examples=40, deadline=None)
@given(m=small_matrices)
def test_snf_decomposition(m):
    u, d, v = smith_normal_form(m)
    prod = u @ m @ v
    assert prod.entries == d.entries
    assert abs(_det(u.entries)) == 1
    assert abs(_det(v.entries)) == 1
    diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert b == 0 or (a != 0 and b % a == 0)


@settings(max_examples=25, deadline=None)
@given(m=small_matrices)
def test_snf_determinantal_divisor_oracle(m):
    _, d, _ = smith_normal_form(m)
    diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
    prod = 1
    for k, dk in enumerate(diag, start=1):
        if dk == 0:
            break
        prod *= dk
        assert _minor_gcd(m, k) == prod


@settings(max_examples=40, deadline=None)
@given(m=small_matrices)
def test_kernel_basis_annihilates(m):
    k = kernel_basis(m)
    prod = m @ k
    assert all(v == 0 for row in prod.entries for v in row)


def test_solve_columns():
    k = IntMatrix(ZZ, [[2, 0], [0, 3]])
    a = IntMatrix(ZZ, [[4], [9]])
    x = solve_columns(k, a)
    assert (k @ x).entries == a.entries
    import pytest
    with pytest.raises(ValueError):
        solve_columns(k, IntMatrix(ZZ, [[1], [0]]))


def test_lattice_basis_membership():
    gens = IntMatrix(ZZ, [[2, 4], [0, 6]])
    basis = lattice_basis(gens)
    # both generators must be integer combinations of the basis
    for j in range(gens.cols):
        col = IntMatrix(ZZ, [[gens.entries[i][j]] for i in range(gens.rows)])
        x = solve_columns(basis, col)
        assert (basis @ x).entries == col.entries


def test_homology_circle():
    # S^1: ranks (1, 1), zero boundary
    c = FreeComplex(ZZ, {0: 1, 1: 1}, {1: IntMatrix.zero(ZZ, 1, 1)})
    h0, h1 = homology_at(c, 0), homology_at(c, 1)
    assert (h0.free_rank, h0.torsion) == (1, [])
    assert (h1.free_rank, h1.torsion) == (1, [])


def test_homology_mod2():
    # 0 -> Z --2--> Z -> 0 has H_0 = Z/2
    c = FreeComplex(ZZ, {0: 1, 1: 1}, {1: IntMatrix(ZZ, [[2]])})
    h0 = homology_at(c, 0)
    assert (h0.free_rank, h0.torsion) == (0, [2])


def test_tensor_total_complex_square_zero():
    a = FreeComplex(ZZ, {0: 2, 1: 2}, {1: IntMatrix(ZZ, [[0, 1], [0, 0]])})
    b = FreeComplex(ZZ, {0: 1, 1: 1, 2: 1},
                    {1: IntMatrix(ZZ, [[3]]), 2: IntMatrix(ZZ, [[0]])})
    t = tensor_total_complex(a, b)
    for k in sorted(t.ranks):
        if k - 1 in t.ranks and k + 1 in t.ranks:
            prod = t.diff(k) @ t.diff(k + 1)
            assert all(v == 0 for row in prod.entries for v in row)


def test_tor_one_cyclic():
    h = tor_one(4, 2)
    assert h.free_rank == 0
    assert h.torsion == [2] * 8


def test_kronecker_shape():
    a = IntMatrix(ZZ, [[1, 2]])
    b = IntMatrix(ZZ, [[3], [4]])
    k = kronecker(a, b)
    assert (k.rows, k.cols) == (2, 2)
    assert k.entries == [[3, 6], [4, 8]]


def test_cyclic_mult_matrix():
    m = _cyclic_mult_matrix(3, 3)
    # multiplication by 3 x^2 on Z[Z/3]
    assert m.entries == [[0, 3, 0], [0, 0, 3], [3, 0, 0]]
