"""Rational cohomology of a DGA, degree by degree."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .dga import DGA
from .gca import AlgebraError, CapOverflow, Element
from .linalg import Echelon, Vector, axpy, kernel_and_image


class NotClosed(AlgebraError):
    def __init__(self, element: Element, boundary: Element):
        super().__init__(f"{element} is not closed: d of it is {boundary}")
        self.element = element
        self.boundary = boundary


@dataclass(frozen=True)
class CochainSlice:
    degree: int
    basis: Tuple
    images: Tuple  # coordinate vectors of d(basis[j]) in degree + 1


@dataclass
class CohomologyBasis:
    """Representatives of a basis of H^k and the data to reduce cocycles."""

    degree: int
    representatives: List[Element]
    boundaries: Echelon = field(repr=False)
    pivots: List[int] = field(repr=False)
    rep_vectors: List[Vector] = field(repr=False)

    @property
    def betti(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: Element
    coords: Tuple[Fraction, ...]
    primitive: Optional[Element] = None  # set when the class is zero

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return f"[{self.representative}]"


def _cache(D: DGA) -> Dict[int, CohomologyBasis]:
    return D.__dict__.setdefault("_cohomology_cache", {})


def cochain_slice(D: DGA, k: int) -> CochainSlice:
    return CochainSlice(k, D.algebra.basis(k), tuple(D.images(k)))


def check_window(D: DGA, k: int):
    if k < 0:
        raise AlgebraError(f"negative degree {k}")
    if not D.algebra.computable(k + 1):
        raise CapOverflow(f"H^{k} needs degree {k + 1}, above the cap {D.cap}")


def cohomology_basis(D: DGA, k: int) -> CohomologyBasis:
    """Basis of H^k with reduced-echelon representatives.

    Representatives have no component on the pivot monomials of the
    boundaries, are reduced among themselves and have leading coefficient 1.
    """
    cache = _cache(D)
    if k in cache:
        return cache[k]
    check_window(D, k)
    A = D.algebra
    if k >= 1:
        _, boundaries = kernel_and_image(D.images(k - 1))
    else:
        boundaries = Echelon()
    cycles, _ = kernel_and_image(D.images(k))
    reps = Echelon()
    for z in cycles:
        residual, _ = boundaries.reduce(z)
        if residual:
            reps.insert(residual)
    rows = reps.reduced_rows()
    pivots = [min(r) for r in rows]
    basis = CohomologyBasis(
        k, [A.from_vector(k, r) for r in rows], boundaries, pivots, rows)
    cache[k] = basis
    return basis


def betti_numbers(D: DGA, degrees: Iterable[int]) -> List[int]:
    return [cohomology_basis(D, k).betti for k in degrees]


def class_coordinates(D: DGA, c: Element) -> Tuple[Tuple[Fraction, ...], Vector]:
    """Coordinates of a closed element and the boundary part left over."""
    k = c.degree
    if k is None:
        raise AlgebraError("cohomology classes need a homogeneous element")
    H = cohomology_basis(D, k)
    vec = c.vector(k)
    residual, _ = H.boundaries.reduce(vec)
    coords = tuple(residual.get(p, Fraction(0)) for p in H.pivots)
    check = dict(residual)
    for a, row in zip(coords, H.rep_vectors):
        axpy(check, -a, row)
    if check:
        raise NotClosed(c, D.d(c))
    return coords, residual


def primitive(D: DGA, c: Element) -> Optional[Element]:
    """Some ``w`` with ``d(w) = c``, or ``None`` if ``c`` is not exact."""
    k = c.degree
    if not c:
        return D.algebra.zero(None if k is None else k - 1)
    if k is None or k < 1:
        return None
    H = cohomology_basis(D, k)
    combo = H.boundaries.express(c.vector(k))
    if combo is None:
        return None
    w = D.algebra.from_vector(k - 1, combo)
    assert D.d(w) == c
    return w


def reduce_class(D: DGA, c: Element) -> CohomologyClass:
    """Class of a closed element; zero classes come with a primitive."""
    if not c.is_homogeneous() or c.degree is None:
        raise AlgebraError("reduce_class needs a homogeneous element of known degree")
    boundary = D.d(c)
    if boundary:
        raise NotClosed(c, boundary)
    coords, _ = class_coordinates(D, c)
    prim = None
    if not any(coords):
        prim = primitive(D, c)
    return CohomologyClass(c.degree, c, coords, prim)


def class_of(D: DGA, c) -> CohomologyClass:
    if isinstance(c, str):
        c = D.algebra.element(c)
    return reduce_class(D, c)


def basis_class(D: DGA, k: int, i: int) -> CohomologyClass:
    H = cohomology_basis(D, k)
    coords = tuple(Fraction(int(j == i)) for j in range(H.betti))
    return CohomologyClass(k, H.representatives[i], coords)


def basis_classes(D: DGA, k: int) -> List[CohomologyClass]:
    return [basis_class(D, k, i) for i in range(cohomology_basis(D, k).betti)]


def from_coords(D: DGA, k: int, coords: Sequence[Fraction]) -> CohomologyClass:
    H = cohomology_basis(D, k)
    rep = D.algebra.zero(k)
    for a, r in zip(coords, H.representatives):
        if a:
            rep = rep + r * a
    return CohomologyClass(k, rep, tuple(Fraction(a) for a in coords))


def cup(D: DGA, c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
    """Cup product of two classes, computed on their representatives."""
    k = c1.degree + c2.degree
    check_window(D, k)
    prod = c1.representative * c2.representative
    prod = Element(D.algebra, prod.terms, k)
    return reduce_class(D, prod)
