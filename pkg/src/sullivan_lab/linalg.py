"""Exact sparse linear algebra over the rationals.

Vectors are plain ``dict[int, Fraction]`` keyed by coordinate index with no
zero entries.  Pivots are always the smallest nonzero index, so results only
depend on the coordinate order chosen by the caller.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

Vector = Dict[int, Fraction]
Combo = Dict[Hashable, Fraction]


def axpy(y: dict, a, x: dict) -> None:
    """In place ``y += a * x``, dropping entries that cancel."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scaled(x: dict, a) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incrementally built echelon basis of a subspace.

    Each stored row remembers how it was assembled from the tagged vectors
    that were inserted, so membership queries come back with coefficients.
    """

    def __init__(self):
        self.rows: Dict[int, Tuple[Vector, Combo]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vec: Vector, combo: Optional[Combo] = None) -> Tuple[Vector, Combo]:
        """Eliminate every pivot coordinate from ``vec``.

        Returns the residual and the combination of inserted tags that was
        subtracted, i.e. ``vec = residual + sum(c * tagged_vector)``.
        """
        vec = dict(vec)
        used: Combo = {} if combo is None else dict(combo)
        while True:
            hits = [c for c in vec if c in self.rows]
            if not hits:
                return vec, used
            c = min(hits)
            row, row_combo = self.rows[c]
            f = vec[c]
            axpy(vec, -f, row)
            axpy(used, f, row_combo)

    def insert(self, vec: Vector, tag: Hashable = None) -> Optional[int]:
        """Add a vector; returns the new pivot or ``None`` if dependent."""
        residual, used = self.reduce(vec)
        if not residual:
            return None
        combo: Combo = {} if tag is None else {tag: Fraction(1)}
        axpy(combo, -1, used)
        p = min(residual)
        inv = 1 / Fraction(residual[p])
        self.rows[p] = (scaled(residual, inv), scaled(combo, inv))
        return p

    def express(self, vec: Vector) -> Optional[Combo]:
        """Coefficients on inserted tags summing to ``vec``, or ``None``."""
        residual, used = self.reduce(vec)
        if residual:
            return None
        return used

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)[0]

    def reduced_rows(self) -> List[Vector]:
        """Rows in reduced echelon form, sorted by pivot."""
        out: Dict[int, Vector] = {}
        for p in sorted(self.rows, reverse=True):
            row = dict(self.rows[p][0])
            for q in [c for c in row if c != p and c in out]:
                axpy(row, -row[q], out[q])
            out[p] = row
        return [out[p] for p in sorted(out)]


def kernel_and_image(images: List[Vector]) -> Tuple[List[Vector], Echelon]:
    """Kernel basis of the map sending basis vector ``j`` to ``images[j]``.

    Columns are processed in order; a column whose image depends on earlier
    ones contributes the kernel vector with a 1 in its own slot (the
    free-variable nullspace basis).  The returned echelon spans the image
    and is tagged by source index, which makes preimage solves cheap.
    """
    ech = Echelon()
    kernel: List[Vector] = []
    for j, img in enumerate(images):
        residual, used = ech.reduce(img)
        if residual:
            ech.insert(img, j)
        else:
            v: Vector = {j: Fraction(1)}
            axpy(v, -1, used)
            kernel.append(v)
    return kernel, ech


def rank(vectors: Iterable[Vector]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return ech.rank


def solve_affine(equations: List[Tuple[Vector, Fraction]], nvars: int):
    """Solve ``sum(eq[v] * x_v) + const = 0`` for every ``(eq, const)``.

    Returns ``None`` when inconsistent, otherwise ``(particular, free,
    directions)`` where ``particular`` is the solution with all free
    variables zero and ``directions[f]`` is the change of the solution per
    unit of free variable ``f``.  Variable ``nvars`` is reserved for the
    constant column.
    """
    const = nvars
    ech = Echelon()
    for eq, c in equations:
        row = dict(eq)
        if c:
            row[const] = Fraction(c)
        if row:
            ech.insert(row)
    rows = ech.reduced_rows()
    pivots = [min(r) for r in rows]
    if const in pivots:
        return None
    pivot_set = set(pivots)
    free = [v for v in range(nvars) if v not in pivot_set]
    particular: Vector = {}
    for p, r in zip(pivots, rows):
        if r.get(const):
            particular[p] = -r[const]
    directions: Dict[int, Vector] = {}
    for f in free:
        d: Vector = {f: Fraction(1)}
        for p, r in zip(pivots, rows):
            if r.get(f):
                d[p] = -r[f]
        directions[f] = d
    return particular, free, directions
