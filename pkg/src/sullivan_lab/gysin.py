"""Integral cohomology of odd-sphere bundles via the Gysin sequence."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .gca import AlgebraError, Element
from .rings import TableRing, parse_product_table


class IntegralGradedRing(TableRing):
    """Free abelian group in each degree with integral structure constants."""

    def __init__(self, basis, products):
        super().__init__(basis, products)
        for vec in self._table.values():
            if any(c.denominator != 1 for c in vec.values()):
                raise AlgebraError("structure constants must be integers")

    def ranks(self) -> List[int]:
        return [len(self.basis(k)) for k in range(self.cap + 1)]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form ``U @ M @ V = D`` over the integers.

    Returns ``(factors, U, V)`` where ``factors`` are the diagonal entries
    of ``D`` (nonnegative, each dividing the next, zeros last) and ``U``,
    ``V`` are unimodular, all as lists of lists of Python ints.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    factors = [A[t][t] for t in range(min(m, n))]
    return factors, U, V


def matmul(X, Y):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*Y)] for row in X]


@dataclass(frozen=True)
class GroupDescription:
    """A finitely generated abelian group Z^r + Z_{t1} + ... ."""

    free_rank: int
    torsion: Tuple[int, ...] = ()
    resolved: bool = True

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GysinResult:
    fiber_dim: int
    groups: Tuple[GroupDescription, ...]

    def __getitem__(self, k: int) -> GroupDescription:
        if 0 <= k < len(self.groups):
            return self.groups[k]
        return GroupDescription(0)

    def lines(self) -> List[str]:
        return [f"H^{k} = {g}" for k, g in enumerate(self.groups)]


def cup_matrix(B: TableRing, e: Element, k: int) -> List[List[int]]:
    """Matrix of multiplication by ``e`` from degree ``k`` into ``k + |e|``.

    Rows are indexed by the target basis, columns by the source basis.
    """
    src = B.basis(k)
    tgt = B.basis(k + e.degree)
    idx = {n: i for i, n in enumerate(tgt)}
    cols = []
    for name in src:
        prod = B.symbol(name) * e
        col = [0] * len(tgt)
        for n, c in prod.terms.items():
            col[idx[n]] = int(c)
        cols.append(col)
    return [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]


def gysin_total(B: TableRing, fiber_dim: int, euler: Union[Element, str]) -> GysinResult:
    """Integral cohomology groups of the total space of an S^fiber_dim bundle.

    For every k the Gysin sequence gives
    0 -> coker(e: H^{k-f-1} -> H^k) -> H^k(E) -> ker(e: H^{k-f} -> H^{k+1}) -> 0
    with f the fiber dimension.  The kernel is a subgroup of a free group,
    so the sequence always splits here and every degree is resolved.
    """
    if fiber_dim < 1 or fiber_dim % 2 == 0:
        raise AlgebraError("fiber dimension must be odd and positive")
    if isinstance(euler, str):
        euler = B.element(euler)
    if euler and euler.degree != fiber_dim + 1:
        raise AlgebraError(f"Euler class must have degree {fiber_dim + 1}, got {euler.degree}")
    if any(c.denominator != 1 for c in euler.terms.values()):
        raise AlgebraError("Euler class must be integral")
    euler = Element(B, euler.terms, fiber_dim + 1)
    shift = fiber_dim + 1
    groups = []
    for k in range(B.top_degree + fiber_dim + 1):
        coker_free, torsion = 0, []
        tgt = len(B.basis(k))
        if tgt:
            M = cup_matrix(B, euler, k - shift) if k - shift >= 0 else [[] for _ in range(tgt)]
            if M and M[0]:
                factors, _, _ = smith_normal_form(M)
            else:
                factors = []
            r = sum(1 for f in factors if f)
            coker_free = tgt - r
            torsion = [f for f in factors if f > 1]
        src = len(B.basis(k - fiber_dim)) if k - fiber_dim >= 0 else 0
        ker = 0
        if src:
            M = cup_matrix(B, euler, k - fiber_dim)
            if M:
                factors, _, _ = smith_normal_form(M)
                ker = src - sum(1 for f in factors if f)
            else:
                ker = src
        groups.append(GroupDescription(coker_free + ker, tuple(torsion)))
    return GysinResult(fiber_dim, tuple(groups))


def sphere_product_ring(k: int, prefix: str = "a") -> IntegralGradedRing:
    """Integral cohomology ring of (S^2)^k with generators a1, ..., ak."""
    from itertools import combinations

    basis = []
    subsets = {}
    for r in range(1, k + 1):
        for sub in combinations(range(1, k + 1), r):
            name = "".join(f"{prefix}{i}" for i in sub)
            subsets[sub] = name
            basis.append((name, 2 * r))
    products = {}
    for s1, n1 in subsets.items():
        for s2, n2 in subsets.items():
            if set(s1) & set(s2):
                continue
            products[(n1, n2)] = {subsets[tuple(sorted(s1 + s2))]: 1}
    return IntegralGradedRing(basis, products)


def integral_ring(basis: Sequence[Tuple[str, int]], table: Mapping[str, str]) -> IntegralGradedRing:
    return IntegralGradedRing(basis, parse_product_table(basis, table))
