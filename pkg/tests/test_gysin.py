from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from sullivan_lab.gca import AlgebraError
from sullivan_lab.gysin import gysin_total, integral_ring, matmul, smith_normal_form, sphere_product_ring


def det(M):
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        for r in range(c + 1, n):
            q = A[r][c] / A[c][c]
            A[r] = [a - q * b for a, b in zip(A[r], A[c])]
    out = Fraction(sign)
    for i in range(n):
        out *= A[i][i]
    return int(out)


def determinantal_factors(M):
    """Invariant factors from gcds of k x k minors."""
    m, n = len(M), len(M[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[M[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]
    return factors + [0] * (min(m, n) - len(factors))


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_against_determinantal_divisors(M):
    factors, U, V = smith_normal_form(M)
    assert list(factors) == determinantal_factors(M)
    D = matmul(matmul(U, M), V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert x == (factors[i] if i == j else 0)
    assert abs(det(U)) == 1 and abs(det(V)) == 1


def test_snf_example():
    factors, _, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert list(factors) == [2, 6, 12]


def test_s2xs2_euler_2():
    B = integral_ring([("a1", 2), ("a2", 2), ("a1a2", 4)], {"a1*a2": "a1a2"})
    res = gysin_total(B, 3, "2*a1a2")
    assert [str(g) for g in res.groups] == ["Z", "0", "Z^2", "0", "Z_2", "Z^2", "0", "Z"]


def test_trivial_euler_is_kunneth():
    B = sphere_product_ring(2)
    res = gysin_total(B, 3, "0")
    # (S2 x S2) x S3
    assert [g.free_rank for g in res.groups] == [1, 0, 2, 1, 1, 2, 0, 1]
    assert all(not g.torsion for g in res.groups)


@pytest.mark.parametrize("k,e", [(1, 3), (2, 5), (3, 7)])
def test_euler_characteristic_zero(k, e):
    # odd-sphere bundles over finite complexes have Euler characteristic zero
    B = sphere_product_ring(k)
    top = "".join(f"a{i}" for i in range(1, k + 1))
    res = gysin_total(B, 2 * k - 1, f"{e}*{top}")
    assert sum((-1) ** i * g.free_rank for i, g in enumerate(res.groups)) == 0
    assert res[2 * k].torsion == ((e,) if e > 1 else ())


def test_permutation_invariance():
    B = sphere_product_ring(3)
    base = [str(g) for g in gysin_total(B, 3, "2*a1a2 + 3*a1a3").groups]
    for p in permutations((1, 2, 3)):
        name = lambda i, j: "".join(f"a{t}" for t in sorted((p[i - 1], p[j - 1])))
        e = f"2*{name(1, 2)} + 3*{name(1, 3)}"
        assert [str(g) for g in gysin_total(B, 3, e).groups] == base


def test_bad_inputs():
    B = sphere_product_ring(2)
    with pytest.raises(AlgebraError):
        gysin_total(B, 2, "a1")
    with pytest.raises(AlgebraError):
        gysin_total(B, 3, "a1")
    with pytest.raises(AlgebraError):
        gysin_total(B, 3, "1/2*a1a2")
