"""Differentials on graded-commutative algebras."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Union

from .gca import AlgebraError, CapOverflow, Element, FreeGCA, GradedAlgebra, make_free_gca
from .linalg import Vector


class DGAError(AlgebraError):
    def __init__(self, msg: str, generator: Optional[str] = None, residue: Optional[Element] = None):
        super().__init__(msg)
        self.generator = generator
        self.residue = residue


class DGA:
    """An algebra together with a degree +1 differential.

    Subclasses implement ``_d_key`` for basis keys; everything else is
    derived from it by linearity.
    """

    algebra: GradedAlgebra

    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self._d_cache: Dict[Hashable, Element] = {}
        self._images: Dict[int, List[Vector]] = {}

    @property
    def cap(self) -> int:
        return self.algebra.cap

    def _d_key(self, key: Hashable) -> Element:
        raise NotImplementedError

    def d_key(self, key: Hashable) -> Element:
        if key not in self._d_cache:
            self._d_cache[key] = self._d_key(key)
        return self._d_cache[key]

    def d(self, e: Element) -> Element:
        """Differential of a homogeneous element."""
        if e.algebra is not self.algebra:
            raise AlgebraError("element does not belong to this DGA")
        if not e.is_homogeneous():
            raise AlgebraError("differential_of only accepts homogeneous elements")
        deg = None if e.degree is None else e.degree + 1
        out: Dict[Hashable, Fraction] = {}
        for key, c in e.terms.items():
            for k2, c2 in self.d_key(key).terms.items():
                s = out.get(k2, 0) + c * c2
                if s:
                    out[k2] = s
                else:
                    out.pop(k2, None)
        return Element(self.algebra, out, deg)

    def images(self, k: int) -> List[Vector]:
        """Coordinate vectors of ``d`` applied to the degree-``k`` basis."""
        if k not in self._images:
            if not self.algebra.computable(k + 1):
                raise CapOverflow(f"d out of degree {k} leaves the cap {self.cap}")
            idx = self.algebra.index(k + 1)
            rows = []
            for key in self.algebra.basis(k):
                rows.append({idx[m]: c for m, c in self.d_key(key).terms.items()})
            self._images[k] = rows
        return self._images[k]

    def is_closed(self, e: Element) -> bool:
        return not self.d(e)


class ZeroDGA(DGA):
    """An algebra with the zero differential."""

    def _d_key(self, key):
        return self.algebra.zero(self.algebra.key_degree(key) + 1)


class FreeDGA(DGA):
    """A free graded-commutative algebra with a differential on generators."""

    algebra: FreeGCA

    def __init__(self, algebra: FreeGCA, diff: Mapping[str, Element]):
        super().__init__(algebra)
        self.diff: Dict[str, Element] = {}
        for g in algebra.generators:
            img = diff.get(g.name)
            self.diff[g.name] = img if img is not None else algebra.zero(g.degree + 1)
        self._gen_d = [self.diff[g.name] for g in algebra.generators]
        self.minimal = _is_minimal(algebra, self.diff)

    def __repr__(self):
        parts = [f"d{name} = {img}" for name, img in self.diff.items() if img]
        return f"FreeDGA({self.algebra!r}; {', '.join(parts) or 'd = 0'})"

    def _d_key(self, key):
        A = self.algebra
        deg = A.key_degree(key)
        first = next((i for i, e in enumerate(key) if e), None)
        if first is None:
            return A.zero(deg + 1)
        rest = tuple(e - 1 if i == first else e for i, e in enumerate(key))
        g = Element(A, {tuple(1 if i == first else 0 for i in range(len(key))): 1})
        m = Element(A, {rest: 1})
        sign = -1 if A.is_odd(first) else 1
        out = self._gen_d[first] * m + g * self.d_key(rest) * sign
        return Element(A, out.terms, deg + 1)

    def with_cap(self, cap: int) -> "FreeDGA":
        """The same presentation over a different degree cap."""
        A = self.algebra.with_cap(cap)
        diff = {name: Element(A, img.terms, img.degree) for name, img in self.diff.items()}
        return attach_differential(A, diff)


def _is_minimal(A: FreeGCA, diff: Mapping[str, Element]) -> bool:
    """No linear parts, and a degree-compatible order in which every
    differential only involves earlier generators."""
    deps = {}
    for g in A.generators:
        img = diff[g.name]
        used = set()
        for key in img.terms:
            if sum(key) == 1:
                return False
            used.update(i for i, e in enumerate(key) if e)
        deps[g.index] = used
    placed = set()
    for deg in sorted({g.degree for g in A.generators}):
        level = {g.index for g in A.generators if g.degree == deg}
        while level:
            ready = {i for i in level if deps[i] <= placed}
            if not ready:
                return False
            placed |= ready
            level -= ready
    return True


def attach_differential(A: FreeGCA, d: Mapping[str, Union[str, Element]]) -> FreeDGA:
    """Validate generator images and return the resulting DGA.

    Images may be given as expression strings or elements; generators not
    mentioned are closed.  Raises :class:`DGAError` on degree mismatch or
    when d(d(g)) is nonzero for some generator.
    """
    diff: Dict[str, Element] = {}
    for name, img in d.items():
        if name not in A.names:
            raise DGAError(f"unknown generator {name!r}", name)
        if isinstance(img, str):
            img = A.element(img)
        if img.algebra is not A:
            raise DGAError(f"image of {name!r} lives in another algebra", name)
        g = A.generators[A.names[name]]
        if not img.is_homogeneous() or (img and img.degree != g.degree + 1):
            raise DGAError(
                f"degree mismatch: d{name} must have degree {g.degree + 1}, got {img.degree}", name)
        if g.degree + 1 > A.cap and img:
            raise CapOverflow(f"image of {name!r} exceeds cap {A.cap}")
        diff[name] = Element(A, img.terms, g.degree + 1)
    D = FreeDGA(A, diff)
    for g in A.generators:
        img = D.diff[g.name]
        if not img:
            continue
        try:
            residue = D.d(img)
        except CapOverflow:
            raise CapOverflow(f"cannot check d^2 on {g.name!r} below cap {A.cap}") from None
        if residue:
            raise DGAError(f"d^2 {g.name} = {residue} is not zero", g.name, residue)
    return D


def differential_of(D: DGA, e: Element) -> Element:
    return D.d(e)


def free_dga(generators, differentials: Mapping[str, str], cap: int) -> FreeDGA:
    """Shorthand: ``free_dga([("a", 2), ("x", 3)], {"x": "a^2"}, cap=8)``."""
    return attach_differential(make_free_gca(generators, cap), differentials)
