"""Free graded-commutative algebras over the rationals.

Everything is truncated at a degree cap.  Products that would land above the
cap raise :class:`CapOverflow` instead of being dropped, unless the algebra
is known to vanish there anyway (e.g. an exterior algebra whose top degree
fits under the cap).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class AlgebraError(ValueError):
    pass


class CapOverflow(AlgebraError):
    pass


class GradedAlgebra:
    """Common interface for the graded algebras the engine computes in.

    Subclasses supply a finite basis in each degree (``basis``), the degree
    of a basis key, a product on basis keys and a printer.  Elements are
    sparse maps from basis keys to rationals.
    """

    cap: int

    def basis(self, k: int) -> Tuple[Hashable, ...]:
        raise NotImplementedError

    def key_degree(self, key: Hashable) -> int:
        raise NotImplementedError

    def mul_keys(self, k1: Hashable, k2: Hashable) -> Mapping[Hashable, Fraction]:
        raise NotImplementedError

    def format_key(self, key: Hashable) -> str:
        raise NotImplementedError

    @property
    def unit_key(self) -> Hashable:
        raise NotImplementedError

    def vanishes_above_cap(self) -> bool:
        """True when there is nothing at all in degrees above ``cap``."""
        return False

    def computable(self, k: int) -> bool:
        return k <= self.cap or self.vanishes_above_cap()

    def index(self, k: int) -> Dict[Hashable, int]:
        cache = self.__dict__.setdefault("_index_cache", {})
        if k not in cache:
            cache[k] = {m: i for i, m in enumerate(self.basis(k))}
        return cache[k]

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    # element constructors

    def zero(self, degree: Optional[int] = None) -> "Element":
        return Element(self, {}, degree)

    def one(self) -> "Element":
        return Element(self, {self.unit_key: Fraction(1)})

    def from_vector(self, k: int, vec: Mapping[int, Fraction]) -> "Element":
        basis = self.basis(k)
        return Element(self, {basis[i]: c for i, c in vec.items()}, k)

    def element(self, text: str) -> "Element":
        from .expr import parse_expression
        return parse_expression(text, self)


class Element:
    """A rational linear combination of basis keys of one algebra."""

    __slots__ = ("algebra", "terms", "_deg")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Hashable, object] = (),
                 degree: Optional[int] = None):
        self.algebra = algebra
        clean = {}
        for k, c in dict(terms).items():
            c = Fraction(c)
            if c:
                clean[k] = c
        self.terms: Dict[Hashable, Fraction] = clean
        if clean:
            degs = {algebra.key_degree(k) for k in clean}
            degree = degs.pop() if len(degs) == 1 else None
        self._deg = degree

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element, ``None`` if inhomogeneous.

        The zero element reports the degree it was created with, if any.
        """
        return self._deg

    def is_homogeneous(self) -> bool:
        return not self.terms or self._deg is not None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements live in different algebras")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return Element(self.algebra, {self.algebra.unit_key: Fraction(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        deg = self._deg if self._deg is not None else other._deg
        return Element(self.algebra, terms, deg)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self.terms.items()}, self._deg)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Element(self.algebra, {k: c * other for k, c in self.terms.items()}, self._deg)
        if not isinstance(other, Element):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self._coerce(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, key: Hashable) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def vector(self, k: Optional[int] = None) -> Dict[int, Fraction]:
        """Coordinates in the degree-``k`` basis (``k`` defaults to own degree)."""
        if k is None:
            k = self._deg
        if self.terms and k != self._deg:
            raise AlgebraError(f"element of degree {self._deg} asked for degree {k}")
        idx = self.algebra.index(k)
        return {idx[m]: c for m, c in self.terms.items()}

    def sorted_terms(self) -> List[Tuple[Hashable, Fraction]]:
        order = {}
        for k in sorted({self.algebra.key_degree(m) for m in self.terms}):
            order.update({m: (k, i) for m, i in self.algebra.index(k).items()})
        return sorted(self.terms.items(), key=lambda kv: order[kv[0]])

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(e: Element) -> str:
    """Canonical text form: terms in basis order, reduced rationals."""
    if not e.terms:
        return "0"
    out = []
    for key, c in e.sorted_terms():
        name = e.algebra.format_key(key)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if name == "1":
            body = format_rational(a)
        elif a == 1:
            body = name
        else:
            body = f"{format_rational(a)}*{name}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def multiply(x: Element, y: Element) -> Element:
    """Product of two elements of the same algebra."""
    x._check(y)
    alg = x.algebra
    terms: Dict[Hashable, Fraction] = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            for k, c in alg.mul_keys(k1, k2).items():
                s = terms.get(k, 0) + c1 * c2 * c
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
    deg = None
    if x.degree is not None and y.degree is not None:
        deg = x.degree + y.degree
    return Element(alg, terms, deg)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    index: int


def koszul_sign(m1: Sequence[int], m2: Sequence[int], odd: Sequence[bool]) -> int:
    """Sign picked up when the word ``m1 m2`` is sorted into canonical order.

    Each odd factor of ``m2`` has to move left past every odd factor of
    ``m1`` with a larger generator index.
    """
    swaps = 0
    seen_odd_after = 0
    for i in range(len(m1) - 1, -1, -1):
        if odd[i] and m2[i]:
            swaps += seen_odd_after
        if odd[i] and m1[i]:
            seen_odd_after += 1
    return -1 if swaps % 2 else 1


class FreeGCA(GradedAlgebra):
    """The free graded-commutative algebra on named generators, up to ``cap``.

    Basis keys are exponent tuples in generator-declaration order; each
    degree's basis is sorted by decreasing exponent vector, so ``a^2`` comes
    before ``a*b`` before ``b^2``.
    """

    def __init__(self, generators: Sequence[Generator], cap: int):
        self.generators = tuple(generators)
        self.cap = cap
        self.names = {g.name: g.index for g in self.generators}
        self._degrees = tuple(g.degree for g in self.generators)
        self._odd = tuple(g.degree % 2 == 1 for g in self.generators)
        self._basis_cache: Dict[int, Tuple[Monomial, ...]] = {}

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeGCA({gens}; cap={self.cap})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def unit_key(self) -> Monomial:
        return (0,) * self.ngens

    def vanishes_above_cap(self) -> bool:
        return all(self._odd) and sum(self._degrees) <= self.cap

    def with_cap(self, cap: int) -> "FreeGCA":
        return make_free_gca([(g.name, g.degree) for g in self.generators], cap)

    def key_degree(self, key: Monomial) -> int:
        return sum(e * d for e, d in zip(key, self._degrees))

    def is_odd(self, i: int) -> bool:
        return self._odd[i]

    def gen(self, name: str) -> Element:
        try:
            i = self.names[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None
        key = tuple(1 if j == i else 0 for j in range(self.ngens))
        return Element(self, {key: 1})

    symbol = gen

    def gens(self) -> List[Element]:
        return [self.gen(g.name) for g in self.generators]

    def mul_keys(self, m1: Monomial, m2: Monomial) -> Dict[Monomial, Fraction]:
        odd = self._odd
        for i in range(len(m1)):
            if odd[i] and m1[i] and m2[i]:
                return {}
        key = tuple(a + b for a, b in zip(m1, m2))
        deg = self.key_degree(key)
        if deg > self.cap:
            raise CapOverflow(f"product of degree {deg} exceeds cap {self.cap}")
        return {key: Fraction(koszul_sign(m1, m2, odd))}

    def basis(self, k: int) -> Tuple[Monomial, ...]:
        if k < 0:
            return ()
        if k > self.cap:
            if self.vanishes_above_cap():
                return ()
            raise CapOverflow(f"degree {k} exceeds cap {self.cap}")
        if k not in self._basis_cache:
            self._basis_cache[k] = tuple(sorted(self._enumerate(k), reverse=True))
        return self._basis_cache[k]

    def _enumerate(self, k: int) -> Iterable[Monomial]:
        n = self.ngens
        degs, odd = self._degrees, self._odd

        def rec(i: int, left: int):
            if i == n:
                if left == 0:
                    yield ()
                return
            top = 1 if odd[i] else left // degs[i]
            for e in range(min(top, left // degs[i]) + 1):
                for rest in rec(i + 1, left - e * degs[i]):
                    yield (e,) + rest

        return rec(0, k)

    def format_key(self, key: Monomial) -> str:
        parts = []
        for g, e in zip(self.generators, key):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"


def make_free_gca(generators: Sequence[Tuple[str, int]], cap: int) -> FreeGCA:
    """Build the free algebra on ``(name, degree)`` pairs truncated at ``cap``."""
    if not generators:
        raise AlgebraError("need at least one generator")
    seen = set()
    gens = []
    for i, (name, degree) in enumerate(generators):
        if not isinstance(name, str) or not name.isidentifier():
            raise AlgebraError(f"bad generator name {name!r}")
        if name in seen:
            raise AlgebraError(f"duplicate generator name {name!r}")
        seen.add(name)
        if int(degree) != degree or degree < 1:
            raise AlgebraError(f"generator {name!r} has degree {degree} < 1")
        gens.append(Generator(name, int(degree), i))
    if cap < max(g.degree for g in gens):
        raise AlgebraError(f"cap {cap} is below the top generator degree")
    return FreeGCA(gens, cap)


def basis_of_degree(A: GradedAlgebra, k: int) -> List[Hashable]:
    return list(A.basis(k))
