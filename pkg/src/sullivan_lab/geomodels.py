"""Models of bundles and Sasakian-type manifolds, hard Lefschetz, obstructions.

Basic cohomology rings are inputs here (``FiniteGradedRing``); nothing is
derived from geometry.  The Lefschetz map is multiplication by omega^k from
degree n-k to degree n+k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .cohomology import (
    CohomologyClass, basis_classes, class_of, cohomology_basis, primitive, reduce_class,
)
from .dga import DGA, DGAError, FreeDGA, ZeroDGA, attach_differential
from .gca import AlgebraError, CapOverflow, Element, FreeGCA, GradedAlgebra, make_free_gca
from .linalg import Echelon, rank, solve_affine
from .rings import UNIT, TableRing, parse_product_table


class FiniteGradedRing(TableRing):
    """A finite-dimensional ring with zero differential, omega and n."""

    def __init__(self, basis, products, omega: Union[str, Element, None] = None,
                 n: Optional[int] = None):
        super().__init__(basis, products)
        self.n = self.top_degree // 2 if n is None else n
        if isinstance(omega, str):
            omega = self.element(omega)
        if omega is not None:
            if omega and omega.degree != 2:
                raise AlgebraError("omega must have degree 2")
            omega = Element(self, omega.terms, 2)
        self.omega = omega

    @classmethod
    def from_table(cls, basis, table: Mapping[str, str], omega=None, n=None):
        return cls(basis, parse_product_table(basis, table), omega, n)


def cpn_ring(n: int) -> FiniteGradedRing:
    """H*(CP^n) with hyperplane class h; basis h, h2, ..., hn."""
    names = ["h" if k == 1 else f"h{k}" for k in range(1, n + 1)]
    basis = [(nm, 2 * k) for k, nm in enumerate(names, start=1)]
    products = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if i + j <= n:
                products[(names[i - 1], names[j - 1])] = {names[i + j - 1]: 1}
    return FiniteGradedRing(basis, products, omega="h", n=n)


def s2xs2_ring() -> FiniteGradedRing:
    return FiniteGradedRing([("a", 2), ("b", 2), ("ab", 4)], {("a", "b"): {"ab": 1}},
                            omega="a + b", n=2)


def sphere_power_ring(k: int) -> FiniteGradedRing:
    """H*((S^2)^k) with omega the sum of the generators."""
    from itertools import combinations

    basis, subsets = [], {}
    for r in range(1, k + 1):
        for sub in combinations(range(1, k + 1), r):
            name = "".join(f"a{i}" for i in sub)
            subsets[sub] = name
            basis.append((name, 2 * r))
    products = {}
    for s1, n1 in subsets.items():
        for s2, n2 in subsets.items():
            if not set(s1) & set(s2):
                products[(n1, n2)] = {subsets[tuple(sorted(s1 + s2))]: 1}
    omega = " + ".join(f"a{i}" for i in range(1, k + 1))
    return FiniteGradedRing(basis, products, omega=omega, n=k)


def torus_ring(k: int) -> FiniteGradedRing:
    """H*(T^k): exterior algebra on k degree-one classes e1..ek."""
    from itertools import combinations

    basis, subsets = [], {}
    for r in range(1, k + 1):
        for sub in combinations(range(1, k + 1), r):
            name = "".join(f"e{i}" for i in sub)
            subsets[sub] = name
            basis.append((name, r))
    products = {}
    for s1, n1 in subsets.items():
        for s2, n2 in subsets.items():
            if set(s1) & set(s2):
                continue
            merged = list(s1 + s2)
            swaps = sum(1 for i in range(len(merged)) for j in range(i + 1, len(merged))
                        if merged[i] > merged[j])
            products[(n1, n2)] = {subsets[tuple(sorted(merged))]: (-1) ** swaps}
    omega = " + ".join(f"e{2 * i - 1}e{2 * i}" for i in range(1, k // 2 + 1)) or None
    return FiniteGradedRing(basis, products, omega=omega if k >= 2 else None, n=k // 2)


# ---------------------------------------------------------------- tensor extensions

class TensorAlgebra(GradedAlgebra):
    """base (x) free algebra on new generators; keys are (base key, monomial)."""

    def __init__(self, base: GradedAlgebra, fiber: FreeGCA, cap: int):
        self.base = base
        self.fiber = fiber
        self.cap = cap
        self._basis: Dict[int, Tuple] = {}

    @property
    def unit_key(self):
        return (self.base.unit_key, self.fiber.unit_key)

    def vanishes_above_cap(self) -> bool:
        if not (self.base.vanishes_above_cap() and self.fiber.vanishes_above_cap()):
            return False
        top = max(k for k in range(self.base.cap + 1) if self.base.basis(k))
        return top + sum(g.degree for g in self.fiber.generators) <= self.cap

    def key_degree(self, key) -> int:
        return self.base.key_degree(key[0]) + self.fiber.key_degree(key[1])

    def basis(self, k: int):
        if k not in self._basis:
            keys = []
            for j in range(k, -1, -1):
                if not self.base.computable(j) or not self.fiber.computable(k - j):
                    if k <= self.cap:
                        raise CapOverflow(f"degree {k} not computable")
                    continue
                fb = self.fiber.basis(k - j)
                for b in self.base.basis(j):
                    keys.extend((b, m) for m in fb)
            self._basis[k] = tuple(keys)
        return self._basis[k]

    def mul_keys(self, k1, k2):
        b1, m1 = k1
        b2, m2 = k2
        bp = self.base.mul_keys(b1, b2)
        if not bp:
            return {}
        fp = self.fiber.mul_keys(m1, m2)
        if not fp:
            return {}
        deg = self.key_degree(k1) + self.key_degree(k2)
        if deg > self.cap and not self.vanishes_above_cap():
            raise CapOverflow(f"product lands in degree {deg} above cap {self.cap}")
        sign = -1 if self.fiber.key_degree(m1) % 2 and self.base.key_degree(b2) % 2 else 1
        return {(b, m): sign * cb * cm for b, cb in bp.items() for m, cm in fp.items()}

    def format_key(self, key) -> str:
        b, m = key
        parts = []
        if b != self.base.unit_key:
            parts.append(self.base.format_key(b))
        if m != self.fiber.unit_key:
            parts.append(self.fiber.format_key(m))
        return "*".join(parts) if parts else "1"

    def symbol(self, name: str) -> Element:
        if name in self.fiber.names:
            g = self.fiber.gen(name)
            return Element(self, {(self.base.unit_key, m): c for m, c in g.terms.items()})
        return self.embed(self.base.symbol(name))

    def embed(self, e: Element) -> Element:
        return Element(self, {(k, self.fiber.unit_key): c for k, c in e.terms.items()}, e.degree)


class _TensorDGA(DGA):
    def __init__(self, algebra: TensorAlgebra, base_dga: DGA, images: Mapping[str, Element]):
        super().__init__(algebra)
        self.base_dga = base_dga
        self.gen_images = [images[g.name] for g in algebra.fiber.generators]

    def _d_key(self, key):
        A = self.algebra
        b, m = key
        deg = A.key_degree(key)
        fiber_unit = A.fiber.unit_key
        if m == fiber_unit:
            db = self.base_dga.d_key(b)
            return Element(A, {(k, fiber_unit): c for k, c in db.terms.items()}, deg + 1)
        if b != A.base.unit_key:
            # d(b m) = d(b) m + (-1)^|b| b d(m)
            bb = Element(A, {(b, fiber_unit): 1})
            mm = Element(A, {(A.base.unit_key, m): 1})
            sign = -1 if A.base.key_degree(b) % 2 else 1
            out = self.d_key((b, fiber_unit)) * mm + bb * self.d_key((A.base.unit_key, m)) * sign
            return Element(A, out.terms, deg + 1)
        first = next(i for i, e in enumerate(m) if e)
        rest = tuple(e - 1 if i == first else e for i, e in enumerate(m))
        g = Element(A, {(A.base.unit_key, tuple(int(i == first) for i in range(len(m)))): 1})
        sign = -1 if A.fiber.is_odd(first) else 1
        out = self.gen_images[first] * Element(A, {(A.base.unit_key, rest): 1}) \
            + g * self.d_key((A.base.unit_key, rest)) * sign
        return Element(A, out.terms, deg + 1)


class ExtensionDGA(DGA):
    """An elementary extension: new generators of one degree over a base.

    Over a free base the result is again a free DGA (generators appended);
    over a finite ring the algebra is the tensor product with keys
    ``(base key, monomial)``.
    """

    def __init__(self, base, new_generators: Sequence[Tuple[str, int]],
                 images: Mapping[str, Union[str, Element]], cap: Optional[int] = None):
        if not new_generators:
            raise AlgebraError("an extension needs at least one new generator")
        degs = {d for _, d in new_generators}
        if len(degs) != 1:
            raise AlgebraError("all new generators must share one degree")
        (gdeg,) = degs
        self.base = base
        self.new_generators = list(new_generators)
        base_dga = base if isinstance(base, DGA) else ZeroDGA(base)
        self.base_dga = base_dga
        balg = base_dga.algebra
        parsed: Dict[str, Element] = {}
        for name, _ in new_generators:
            img = images.get(name)
            if img is None:
                img = balg.zero(gdeg + 1)
            if isinstance(img, str):
                img = balg.element(img)
            if img.algebra is not balg:
                raise DGAError(f"image of {name!r} is not in the base", name)
            if img and img.degree != gdeg + 1:
                raise DGAError(f"degree mismatch: d{name} must have degree {gdeg + 1}, got {img.degree}",
                               name)
            img = Element(balg, img.terms, gdeg + 1)
            if img and base_dga.d(img):
                raise DGAError(f"image of {name!r} is not closed in the base", name, base_dga.d(img))
            parsed[name] = img
        self.gen_diff = parsed
        if isinstance(base_dga, FreeDGA):
            cap = base_dga.cap if cap is None else cap
            gens = [(g.name, g.degree) for g in balg.generators] + list(new_generators)
            A = make_free_gca(gens, cap)
            pad = len(new_generators)
            diff = {}
            for g in balg.generators:
                diff[g.name] = Element(A, {k + (0,) * pad: c for k, c in base_dga.diff[g.name].terms.items()},
                                       g.degree + 1)
            for name, img in parsed.items():
                diff[name] = Element(A, {k + (0,) * pad: c for k, c in img.terms.items()}, gdeg + 1)
            self._inner = attach_differential(A, diff)
            self._pad = pad
        else:
            fiber_cap = sum(d for _, d in new_generators)
            fiber = make_free_gca(new_generators, max(fiber_cap, gdeg))
            if cap is None:
                if not balg.vanishes_above_cap() or gdeg % 2 == 0:
                    raise AlgebraError("a cap is required over this base")
                cap = balg.cap + fiber_cap
            A = TensorAlgebra(balg, fiber.with_cap(max(cap, gdeg)), cap)
            tensor_images = {n: A.embed(e) for n, e in parsed.items()}
            self._inner = _TensorDGA(A, base_dga, tensor_images)
            self._pad = None
        super().__init__(self._inner.algebra)
        if self._pad is None:
            for name in parsed:
                if self.d(self.d(self.algebra.symbol(name))):
                    raise DGAError(f"d^2 {name} is not zero", name)

    @property
    def minimal(self) -> bool:
        return getattr(self._inner, "minimal", False)

    @property
    def diff(self):
        return getattr(self._inner, "diff", None)

    def _d_key(self, key):
        return self._inner.d_key(key)

    def embed(self, e: Element) -> Element:
        if e.algebra is self.algebra:
            return e
        if self._pad is not None:
            return Element(self.algebra, {k + (0,) * self._pad: c for k, c in e.terms.items()}, e.degree)
        return self.algebra.embed(e)

    @property
    def is_tievsky_shape(self) -> bool:
        return (len(self.new_generators) == 1 and self.new_generators[0][1] == 1
                and isinstance(self.base, TableRing))

    @property
    def lefschetz_ring(self) -> Optional[FiniteGradedRing]:
        """The base ring when this is A (x) L(y), dy = omega."""
        if not self.is_tievsky_shape or not isinstance(self.base, FiniteGradedRing):
            return None
        A = self.base
        if A.omega is None or self.gen_diff[self.new_generators[0][0]] != A.omega:
            return None
        return A

    def with_cap(self, cap: int) -> "ExtensionDGA":
        base = self.base.with_cap(cap) if isinstance(self.base, FreeDGA) else self.base
        images = {}
        for n, e in self.gen_diff.items():
            balg = base.algebra if isinstance(base, DGA) else base
            images[n] = Element(balg, e.terms, e.degree)
        return ExtensionDGA(base, self.new_generators, images, cap)


def elementary_extension(base, gens: Sequence[Tuple[str, int]],
                         images: Mapping[str, Union[str, Element]], cap: Optional[int] = None) -> ExtensionDGA:
    return ExtensionDGA(base, gens, images, cap)


def _fresh_name(base, wanted: str) -> str:
    alg = base.algebra if isinstance(base, DGA) else base
    taken = set(getattr(alg, "names", ()))
    name, i = wanted, 1
    while name in taken:
        name = f"{wanted}{i}"
        i += 1
    return name


def _rep(base, c) -> Element:
    if isinstance(c, CohomologyClass):
        return c.representative
    if isinstance(c, str):
        alg = base.algebra if isinstance(base, DGA) else base
        return alg.element(c)
    return c


def circle_bundle_model(base_model, euler, name: str = "t", cap: Optional[int] = None) -> ExtensionDGA:
    """base (x) L(t), dt = euler, |t| = 1."""
    e = _rep(base_model, euler)
    if e and e.degree != 2:
        raise AlgebraError("the Euler class of a circle bundle has degree 2")
    return ExtensionDGA(base_model, [(_fresh_name(base_model, name), 1)], {_fresh_name(base_model, name): e}, cap)


def formal_dimension(base, cap_hint: Optional[int] = None) -> int:
    if isinstance(base, TableRing):
        return base.top_degree
    D = base
    top = 0
    for k in range(0, D.cap):
        if cohomology_basis(D, k).betti:
            top = k
    return top


def sphere_bundle_model(base_model, fiber_dim: int, euler=None, name: str = "z",
                        base_dim: Optional[int] = None, cap: Optional[int] = None) -> ExtensionDGA:
    """base (x) L(z), |z| = fiber_dim odd, dz = euler (or 0)."""
    if fiber_dim < 1 or fiber_dim % 2 == 0:
        raise AlgebraError("fiber dimension must be odd and positive")
    alg = base_model.algebra if isinstance(base_model, DGA) else base_model
    e = alg.zero(fiber_dim + 1) if euler is None else _rep(base_model, euler)
    if e and e.degree != fiber_dim + 1:
        raise AlgebraError(f"Euler class must have degree {fiber_dim + 1}")
    dim = formal_dimension(base_model) if base_dim is None else base_dim
    if e and fiber_dim + 1 > dim:
        raise AlgebraError("Euler class must vanish above the base dimension")
    nm = _fresh_name(base_model, name)
    return ExtensionDGA(base_model, [(nm, fiber_dim)], {nm: e}, cap)


def tievsky_model(H_B: TableRing, cls, name: str = "x") -> ExtensionDGA:
    """H_B (x) L(x), Dx = cls, zero differential on H_B."""
    e = _rep(H_B, cls)
    if not e:
        raise AlgebraError("the class of d(eta) must be a nonzero basic class")
    if e.degree != 2:
        raise AlgebraError("the class of d(eta) has degree 2")
    nm = _fresh_name(H_B, name)
    return ExtensionDGA(H_B, [(nm, 1)], {nm: e})


# ---------------------------------------------------------------- hard Lefschetz

@dataclass
class LefschetzReport:
    n: int
    maps: List[Dict[str, int]]
    holds: bool
    first_failure: Optional[int] = None

    def lines(self) -> List[str]:
        out = [f"k={m['k']}: A^{m['source_degree']} -> A^{m['target_degree']} "
               f"dims {m['source_dim']}->{m['target_dim']} rank {m['rank']}" for m in self.maps]
        out.append("hard Lefschetz: holds" if self.holds else f"hard Lefschetz: fails at k={self.first_failure}")
        return out


def hard_lefschetz_check(A: FiniteGradedRing) -> LefschetzReport:
    if A.omega is None:
        raise AlgebraError("ring has no distinguished omega")
    n = A.n
    maps, first = [], None
    power = A.one()
    for k in range(n + 1):
        src, tgt = A.basis(n - k), A.basis(n + k)
        idx = A.index(n + k)
        vecs = []
        for name in src:
            img = A.symbol(name) * power if name != UNIT else power
            vecs.append({idx[m]: c for m, c in img.terms.items()})
        r = rank(vecs)
        maps.append({"k": k, "source_degree": n - k, "target_degree": n + k,
                     "source_dim": len(src), "target_dim": len(tgt), "rank": r})
        if first is None and not (len(src) == len(tgt) == r):
            first = k
        power = power * A.omega
    return LefschetzReport(n, maps, first is None, first)


def _require_lefschetz(E: ExtensionDGA) -> FiniteGradedRing:
    A = E.lefschetz_ring
    if A is None:
        raise AlgebraError("expected A (x) L(y) with dy = omega over a finite ring")
    if not hard_lefschetz_check(A).holds:
        raise AlgebraError("hard Lefschetz does not hold for the base ring")
    return A


def split_parts(E: ExtensionDGA, e: Element) -> Tuple[Element, Element]:
    """Write e = alpha + beta*y with alpha, beta in the base ring."""
    A = E.base
    unit = E.algebra.fiber.unit_key
    alpha, beta = {}, {}
    for (b, m), c in e.terms.items():
        (alpha if m == unit else beta)[b] = c
    deg = e.degree
    return Element(A, alpha, deg), Element(A, beta, None if deg is None else deg - 1)


def _y(E: ExtensionDGA) -> Element:
    return E.algebra.symbol(E.new_generators[0][0])


@dataclass
class SplitRepresentative:
    degree: int
    form: str  # "base" or "y"
    alpha: Element
    beta: Element
    representative: Element
    certificate: Element  # original - representative = d(certificate)


def _omega_preimage(A: FiniteGradedRing, target: Element) -> Optional[Element]:
    """Some gamma with gamma * omega = target."""
    k = target.degree
    src = A.basis(k - 2) if k >= 2 else ()
    idx = A.index(k)
    rows = []
    for name in src:
        img = A.symbol(name) * A.omega if name != UNIT else A.omega
        rows.append({idx[m]: c for m, c in img.terms.items()})
    ech = Echelon()
    for j, r in enumerate(rows):
        ech.insert(r, j)
    combo = ech.express({idx[m]: c for m, c in target.terms.items()})
    if combo is None:
        return None
    return Element(A, {src[j]: c for j, c in combo.items()}, k - 2)


def lefschetz_split(E: ExtensionDGA, c) -> SplitRepresentative:
    """Canonical representative: pure base when j <= n, beta*y when j > n."""
    A = _require_lefschetz(E)
    rep = _rep(E, c)
    j = rep.degree
    if E.d(rep):
        raise AlgebraError("representative is not closed")
    alpha, beta = split_parts(E, rep)
    y = _y(E)
    zero = E.algebra.zero(j - 1)
    if j <= A.n:
        if beta:
            raise AlgebraError("split impossible: nonzero y-part in low degree violates hard Lefschetz")
        return SplitRepresentative(j, "base", alpha, A.zero(j - 1), rep, zero)
    if not alpha:
        return SplitRepresentative(j, "y", A.zero(j), beta, rep, zero)
    gamma = _omega_preimage(A, alpha)
    if gamma is None:
        raise AlgebraError("split impossible: base part not divisible by omega")
    # d(gamma*y) = (-1)^|gamma| gamma*omega
    w = E.embed(gamma) * y
    if gamma.degree % 2:
        w = -w
    new = rep - E.d(w)
    alpha2, beta2 = split_parts(E, Element(E.algebra, new.terms, j))
    assert not alpha2
    return SplitRepresentative(j, "y", A.zero(j), beta2, Element(E.algebra, new.terms, j),
                               Element(E.algebra, w.terms, j - 1))


def split_class_representative(E: ExtensionDGA, c) -> Element:
    return lefschetz_split(E, c).representative


# ---------------------------------------------------------------- constructive vanishing

def _is_high(E, A, e: Element) -> bool:
    return e.degree is not None and e.degree >= A.n + 1


def constructive_massey_vanishing(E: ExtensionDGA, classes: Sequence, S=None):
    """A defining system with value exactly zero, following the Lefschetz proof.

    ``S`` must be a valid defining system whose diagonal consists of split
    representatives; when omitted, one is produced by the Massey engine.
    """
    from .massey import (DefiningSystem, MasseyUndefined, build_system_family,
                         defining_system_value, defining_system_value_element,
                         validate_defining_system)

    A = _require_lefschetz(E)
    m = len(classes)
    if m < 4:
        raise AlgebraError("the constructive procedure concerns products of order m >= 4")
    reps = [split_class_representative(E, c) for c in classes]
    high = [i for i, r in enumerate(reps, start=1) if r and _is_high(E, A, r)]
    if S is None:
        fam = build_system_family(E, reps)
        S = fam.instantiate({})
    validate_defining_system(E, S)
    for i, r in enumerate(reps, start=1):
        if S.entries[(i, i)] != r:
            raise AlgebraError("defining system must use the split representatives on its diagonal")
    if len(high) > 1:
        # two classes of degree >= n+1 put the value above 2n+1, where H vanishes
        if not defining_system_value(E, S).is_zero():
            raise AlgebraError("internal: value above the top degree should be zero")
        return S
    y = _y(E)
    t = high[0] if high else None
    entries = {}
    for i in range(1, m + 1):
        entries[(i, i)] = reps[i - 1]
    for i in range(1, m):
        deg = S.degree(i, i + 1)
        if t is not None and i in (t - 1, t):
            entries[(i, i + 1)] = E.algebra.zero(deg)
            continue
        _, beta = split_parts(E, S.entries[(i, i + 1)])
        entries[(i, i + 1)] = Element(E.algebra, (E.embed(beta) * y).terms, deg)
    for i in range(1, m + 1):
        for j in range(i + 2, m + 1):
            if (i, j) != (1, m):
                entries[(i, j)] = E.algebra.zero(S.degree(i, j))
    W = DefiningSystem(m, entries)
    validate_defining_system(E, W)
    value = defining_system_value_element(E, W)
    if value:
        raise AlgebraError("constructed system has nonzero value element")
    return W


def constructive_amassey_vanishing(E: ExtensionDGA, a, bs: Sequence, xis: Optional[Sequence[Element]] = None):
    """Primitives with a*b_i = d(xi_i) whose a-Massey value is zero."""
    from .massey import MasseyUndefined, amassey_value_element, validate_primitives

    A = _require_lefschetz(E)
    arep = split_class_representative(E, a)
    breps = [split_class_representative(E, b) for b in bs]
    high = [i for i, r in enumerate(breps) if r and _is_high(E, A, r)]
    q = (len(bs) - 1) * arep.degree + sum(b.degree for b in breps) - len(bs) + 1
    if xis is None:
        xis = []
        for i, b in enumerate(breps, start=1):
            prod = Element(E.algebra, (arep * b).terms, arep.degree + b.degree)
            w = primitive(E, prod)
            if w is None:
                raise MasseyUndefined(f"a*b_{i} is not exact", (0, i), reduce_class(E, prod))
            xis.append(Element(E.algebra, w.terms, prod.degree - 1))
    validate_primitives(E, arep, breps, xis)
    if len(high) > 1:
        # the value lies above 2n+1, where H vanishes
        if not reduce_class(E, amassey_value_element(E, breps, xis, q)).is_zero():
            raise AlgebraError("internal: value above the top degree should be zero")
        return tuple(xis)
    y = _y(E)
    out = []
    for i, (b, xi) in enumerate(zip(breps, xis)):
        deg = arep.degree + b.degree - 1
        if i in high:
            if arep * b:
                raise AlgebraError("a*b_t should vanish for the high class")
            out.append(E.algebra.zero(deg))
            continue
        _, nu = split_parts(E, Element(E.algebra, xi.terms, deg))
        out.append(Element(E.algebra, (E.embed(nu) * y).terms, deg))
    validate_primitives(E, arep, breps, out)
    if amassey_value_element(E, breps, out, q):
        raise AlgebraError("constructed primitives have nonzero value element")
    return tuple(out)


# ---------------------------------------------------------------- cohomology rings and cup length

def cohomology_ring(D: DGA, top: int) -> FiniteGradedRing:
    """H^0..H^top of D as a finite ring with basis names h<k>_<i>."""
    names, reps = {}, {}
    basis = []
    for k in range(1, top + 1):
        for i, r in enumerate(cohomology_basis(D, k).representatives):
            nm = f"h{k}_{i}"
            names[(k, i)] = nm
            reps[nm] = r
            basis.append((nm, k))
    products = {}
    for (k1, i1), n1 in names.items():
        for (k2, i2), n2 in names.items():
            if k1 + k2 > top or (k1, i1) > (k2, i2):
                continue
            prod = Element(D.algebra, (reps[n1] * reps[n2]).terms, k1 + k2)
            coords = reduce_class(D, prod).coords
            vec = {names[(k1 + k2, j)]: c for j, c in enumerate(coords) if c}
            if vec:
                products[(n1, n2)] = vec
    return FiniteGradedRing(basis, products)


def cup_length(D: DGA, top: int) -> int:
    """Largest r with a nonzero product of r positive-degree classes (degrees <= top)."""
    positive = [c for k in range(1, top + 1) for c in basis_classes(D, k)]
    if not positive:
        return 0
    layer = {}
    for c in positive:
        layer.setdefault(c.degree, []).append(c.representative)
    length = 1
    while True:
        nxt: Dict[int, Echelon] = {}
        reps_out: Dict[int, List[Element]] = {}
        for k, els in layer.items():
            for e in els:
                for c in positive:
                    q = k + c.degree
                    if q > top:
                        continue
                    prod = Element(D.algebra, (e * c.representative).terms, q)
                    cls = reduce_class(D, prod)
                    if cls.is_zero():
                        continue
                    ech = nxt.setdefault(q, Echelon())
                    if ech.insert({i: x for i, x in enumerate(cls.coords) if x}) is not None:
                        reps_out.setdefault(q, []).append(prod)
        if not reps_out:
            return length
        layer = reps_out
        length += 1


# ---------------------------------------------------------------- obstruction report

@dataclass
class ObstructionReport:
    dimension: int
    betti: List[int]
    tests: Dict[str, Dict[str, object]] = field(default_factory=dict)
    reasons: List[str] = field(default_factory=list)
    informational: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "obstructed" if self.reasons else "no obstruction found"

    def to_dict(self) -> Dict[str, object]:
        return {"dimension": self.dimension, "betti": self.betti, "tests": self.tests,
                "verdict": self.verdict, "reasons": self.reasons,
                "informational": self.informational,
                "note": "no obstruction found is not a claim that a Sasakian structure exists"}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str)

    def lines(self) -> List[str]:
        out = [f"dimension: {self.dimension}", "betti: " + " ".join(map(str, self.betti))]
        for name in sorted(self.tests):
            t = self.tests[name]
            out.append(f"{name}: {t.get('status')}")
        for r in self.reasons:
            out.append(f"obstruction: {r}")
        for r in self.informational:
            out.append(f"note: {r}")
        out.append(f"verdict: {self.verdict}")
        return out


def basic_betti(betti: Sequence[int], n: int) -> List[int]:
    """b^B_r = b^B_{r-2} + b_r for r <= n."""
    out = []
    for r in range(n + 1):
        prev = out[r - 2] if r >= 2 else 0
        out.append(prev + betti[r])
    return out


def obstruction_report(betti: Optional[Sequence[int]] = None, dimension: Optional[int] = None,
                       model: Optional[DGA] = None, policy=None, max_tests: int = 32) -> ObstructionReport:
    """Checks of the Betti parity, basic Betti recursion, cup length and
    higher / a-Massey products.  Triple products are reported but never count
    as obstructions."""
    from .massey import MasseyUndefined, SearchPolicy, a_massey, higher_massey_search, triple_massey

    policy = policy or SearchPolicy()
    if dimension is None:
        if betti is None:
            raise AlgebraError("need a dimension or a Betti list")
        dimension = len(betti) - 1
    if dimension % 2 == 0:
        raise AlgebraError("obstruction report needs an odd dimension")
    n = (dimension - 1) // 2
    if betti is None:
        if model is None:
            raise AlgebraError("need a Betti list or a model")
        betti = [cohomology_basis(model, k).betti for k in range(dimension + 1)]
    betti = [int(b) for b in betti]
    if len(betti) != dimension + 1 or any(b < 0 for b in betti):
        raise AlgebraError(f"Betti list must have {dimension + 1} nonnegative entries")
    rep = ObstructionReport(dimension, betti)

    odd = [p for p in range(1, n + 1, 2) if betti[p] % 2]
    rep.tests["betti_parity"] = {"status": "fail" if odd else "pass", "odd_degrees": odd}
    for p in odd:
        rep.reasons.append(f"betti parity: b_{p} = {betti[p]} is odd (odd-degree Betti numbers up to n must be even)")

    bb = basic_betti(betti, n)
    bad = [r for r, v in enumerate(bb) if v < 0]
    rep.tests["basic_betti"] = {"status": "fail" if bad else "pass", "values": bb}
    for r in bad:
        rep.reasons.append(f"basic Betti recursion gives b^B_{r} = {bb[r]} < 0")

    if model is None:
        return rep
    cl = cup_length(model, dimension)
    ok = 1 <= cl <= 2 * n
    rep.tests["cup_length"] = {"status": "pass" if ok else "fail", "value": cl, "bound": 2 * n}
    if not ok:
        rep.reasons.append(f"cup length {cl} outside 1..{2 * n}")

    positive = [c for k in range(1, dimension + 1) for c in basis_classes(model, k)]
    counts = {"vanishes": 0, "nonzero_certified": 0, "undecided": 0, "not_defined": 0}
    run = 0
    for combo in iproduct(positive, repeat=4):
        if run >= max_tests:
            break
        if sum(c.degree for c in combo) - 2 > dimension:
            continue
        run += 1
        try:
            res = higher_massey_search(model, list(combo), policy)
        except MasseyUndefined:
            counts["not_defined"] += 1
            continue
        counts[res.verdict] += 1
        if res.verdict == "nonzero_certified":
            rep.reasons.append("certified nonzero quadruple Massey product "
                               + "<" + ", ".join(str(c) for c in combo) + ">")
    rep.tests["higher_massey"] = {"status": "fail" if counts["nonzero_certified"] else "pass", **counts}

    evens = [c for c in positive if c.degree % 2 == 0]
    acounts = {"vanishes": 0, "nonzero_certified": 0, "undecided": 0, "not_defined": 0}
    run = 0
    for a in evens:
        for bs in iproduct(positive, repeat=3):
            if run >= max_tests:
                break
            if 2 * a.degree + sum(b.degree for b in bs) - 2 > dimension:
                continue
            run += 1
            try:
                res = a_massey(model, a, list(bs), policy)
            except MasseyUndefined:
                acounts["not_defined"] += 1
                continue
            acounts[res.verdict] += 1
            if res.verdict == "nonzero_certified":
                rep.reasons.append(f"certified nonzero a-Massey product <{a}; "
                                   + ", ".join(str(b) for b in bs) + ">")
    rep.tests["a_massey"] = {"status": "fail" if acounts["nonzero_certified"] else "pass", **acounts}

    nontrivial = 0
    for combo in iproduct(positive, repeat=3):
        if sum(c.degree for c in combo) - 1 > dimension - 1:
            continue
        try:
            res = triple_massey(model, *combo)
        except (MasseyUndefined, CapOverflow):
            continue
        if res.verdict == "nonzero_certified":
            nontrivial += 1
            rep.informational.append(
                "nonzero triple Massey product <" + ", ".join(str(c) for c in combo)
                + "> (triple products are not obstructions)")
    rep.tests["triple_massey"] = {"status": "informational", "nonzero": nontrivial}
    return rep
