"""Finite-dimensional graded-commutative rings given by structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .gca import AlgebraError, Element, GradedAlgebra

UNIT = "1"


class TableRing(GradedAlgebra):
    """Graded ring with a named basis and a multiplication table.

    ``products`` maps ordered pairs of basis names to linear combinations
    ``{name: coefficient}``; the reversed pair is filled in with the Koszul
    sign and unlisted products are zero.  The unit ``1`` is implicit.
    """

    def __init__(self, basis: Sequence[Tuple[str, int]],
                 products: Mapping[Tuple[str, str], Mapping[str, object]]):
        self._deg: Dict[str, int] = {UNIT: 0}
        order: Dict[int, List[str]] = {0: [UNIT]}
        for name, deg in basis:
            if name == UNIT:
                continue
            if not name.isidentifier():
                raise AlgebraError(f"bad basis name {name!r}")
            if name in self._deg:
                raise AlgebraError(f"duplicate basis name {name!r}")
            if deg < 0 or int(deg) != deg:
                raise AlgebraError(f"basis element {name!r} has bad degree {deg}")
            self._deg[name] = int(deg)
            order.setdefault(int(deg), []).append(name)
        self._basis = {k: tuple(v) for k, v in order.items()}
        self.cap = max(self._deg.values())
        self._table: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
        for (x, y), value in products.items():
            for n in (x, y):
                if n not in self._deg:
                    raise AlgebraError(f"unknown basis element {n!r} in product table")
            vec = {n: Fraction(c) for n, c in dict(value).items() if c}
            for n in vec:
                if n not in self._deg:
                    raise AlgebraError(f"unknown basis element {n!r} in product table")
                if self._deg[n] != self._deg[x] + self._deg[y]:
                    raise AlgebraError(f"{x}*{y} must land in degree {self._deg[x] + self._deg[y]}")
            self._store(x, y, vec)
        self.validate()

    def _store(self, x, y, vec):
        sign = -1 if self._deg[x] % 2 and self._deg[y] % 2 else 1
        flipped = {n: sign * c for n, c in vec.items()}
        if (y, x) in self._table and x != y and self._table[(y, x)] != flipped:
            raise AlgebraError(f"{x}*{y} and {y}*{x} violate graded commutativity")
        if x == y and sign == -1 and vec:
            raise AlgebraError(f"odd element {x!r} must square to zero")
        self._table[(x, y)] = vec
        self._table[(y, x)] = flipped

    @property
    def unit_key(self):
        return UNIT

    def vanishes_above_cap(self) -> bool:
        return True

    @property
    def top_degree(self) -> int:
        return self.cap

    @property
    def names(self) -> List[str]:
        return [n for k in sorted(self._basis) for n in self._basis[k]]

    def basis(self, k: int):
        return self._basis.get(k, ())

    def key_degree(self, key: str) -> int:
        return self._deg[key]

    def mul_keys(self, x: str, y: str):
        if x == UNIT:
            return {y: Fraction(1)}
        if y == UNIT:
            return {x: Fraction(1)}
        return self._table.get((x, y), {})

    def format_key(self, key: str) -> str:
        return key

    def symbol(self, name: str) -> Element:
        if name not in self._deg:
            raise AlgebraError(f"unknown basis element {name!r}")
        return Element(self, {name: 1})

    def validate(self):
        names = self.names
        for x, y, z in product(names, repeat=3):
            if self._deg[x] + self._deg[y] + self._deg[z] > self.cap:
                continue
            ex, ey, ez = (self.symbol(n) for n in (x, y, z))
            if (ex * ey) * ez != ex * (ey * ez):
                raise AlgebraError(f"multiplication is not associative on ({x}, {y}, {z})")

    def structure_constants(self) -> Dict[Tuple[str, str], Dict[str, Fraction]]:
        """Products of non-unit basis pairs in declaration order."""
        names = [n for n in self.names if n != UNIT]
        out = {}
        for i, x in enumerate(names):
            for y in names[i:]:
                v = self._table.get((x, y), {})
                if v:
                    out[(x, y)] = dict(v)
        return out


def parse_product_table(basis: Sequence[Tuple[str, int]], table: Mapping[str, str]):
    """Turn ``{"a*b": "2*c"}`` entries into the pair-keyed form."""
    from .expr import parse_expression

    scratch = TableRing(basis, {})
    products = {}
    for lhs, rhs in table.items():
        parts = [p.strip() for p in lhs.split("*")]
        if len(parts) != 2:
            raise AlgebraError(f"product key {lhs!r} must be 'x*y'")
        value = parse_expression(rhs, scratch)
        products[(parts[0], parts[1])] = dict(value.terms)
    return products
