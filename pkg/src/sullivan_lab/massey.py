"""Triple, higher and a-Massey products with exact zero decisions.

Higher products are handled by parametrizing every defining system: each
entry ``a_ij`` is a primitive of its required boundary plus an arbitrary
closed element, written in a basis of cocycles with one scalar parameter per
basis vector.  Entries therefore become polynomials in the parameters with
coefficients in the DGA.  Linear constraints on the parameters are solved
exactly; when a constraint is genuinely nonlinear the offending parameters
are pinned to concrete values and the run is marked incomplete, which
disables certification of nonzero results (vanishing witnesses are always
checked concretely, so they stay valid).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .cohomology import (
    CohomologyClass, check_window, class_coordinates, cohomology_basis, primitive, reduce_class,
)
from .dga import DGA
from .gca import AlgebraError, Element
from .linalg import Echelon, Vector, axpy, kernel_and_image, solve_affine

PMono = Tuple[int, ...]  # sorted parameter ids, with repetition


class MasseyUndefined(AlgebraError):
    def __init__(self, msg: str, where=None, obstruction: Optional[CohomologyClass] = None):
        super().__init__(msg)
        self.where = where
        self.obstruction = obstruction


class DefiningSystemError(AlgebraError):
    def __init__(self, i: int, j: int, residue: Element):
        super().__init__(f"entry ({i},{j}) violates its boundary condition; residue {residue}")
        self.i, self.j, self.residue = i, j, residue


@dataclass
class SearchPolicy:
    max_sweeps: int = 1
    samples: int = 16
    seed: int = 0
    accept_lefschetz: bool = True


@dataclass
class DefiningSystem:
    """Entries ``a_ij`` (1-based, diagonal included, corner excluded)."""

    order: int
    entries: Dict[Tuple[int, int], Element]

    def __getitem__(self, ij):
        return self.entries[ij]

    def degree(self, i: int, j: int) -> int:
        return sum(self.entries[(r, r)].degree for r in range(i, j + 1)) - (j - i)

    def format(self) -> Dict[str, str]:
        return {f"a{i},{j}": str(e) for (i, j), e in sorted(self.entries.items())}


@dataclass
class MasseyResult:
    kind: str
    order: int
    degree: int
    verdict: str  # "vanishes", "nonzero_certified" or "undecided"
    value: Optional[CohomologyClass] = None
    indeterminacy: List[Tuple[Fraction, ...]] = field(default_factory=list)
    witness: object = None
    proof: Dict[str, object] = field(default_factory=dict)
    samples: List[Tuple[Fraction, ...]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def vanishes(self) -> bool:
        return self.verdict == "vanishes"


def bar(e: Element) -> Element:
    """(-1)^deg e."""
    return -e if e.degree % 2 else e


def _check_reps(D: DGA, classes: Sequence) -> List[Element]:
    reps = []
    for c in classes:
        rep = c.representative if isinstance(c, CohomologyClass) else c
        if isinstance(rep, str):
            rep = D.algebra.element(rep)
        if rep.algebra is not D.algebra:
            raise AlgebraError("class does not belong to this DGA")
        if rep.degree is None:
            raise AlgebraError("Massey inputs need homogeneous representatives of known degree")
        if D.d(rep):
            raise AlgebraError(f"representative {rep} is not closed")
        reps.append(rep)
    return reps


# ---------------------------------------------------------------- defining systems

def boundary_target(entries: Mapping[Tuple[int, int], Element], i: int, j: int, D: DGA) -> Element:
    """sum_{k=i}^{j-1} (-1)^{|a_ik|} a_ik a_{k+1,j}."""
    total = None
    for k in range(i, j):
        term = bar(entries[(i, k)]) * entries[(k + 1, j)]
        total = term if total is None else total + term
    return total


def validate_defining_system(D: DGA, S: DefiningSystem) -> None:
    t = S.order
    for ell in range(1, t - 1):
        for i in range(1, t - ell + 1):
            j = i + ell
            target = boundary_target(S.entries, i, j, D)
            residue = D.d(S.entries[(i, j)]) - target
            if residue:
                raise DefiningSystemError(i, j, residue)
    for i in range(1, t + 1):
        if D.d(S.entries[(i, i)]):
            raise DefiningSystemError(i, i, D.d(S.entries[(i, i)]))


def defining_system_value_element(D: DGA, S: DefiningSystem) -> Element:
    value = boundary_target(S.entries, 1, S.order, D)
    deg = sum(S.entries[(i, i)].degree for i in range(1, S.order + 1)) - (S.order - 2)
    if value.degree is not None and value.degree != deg:
        raise AlgebraError("degree bookkeeping failed for the Massey value")
    return Element(D.algebra, value.terms, deg)


def defining_system_value(D: DGA, S: DefiningSystem) -> CohomologyClass:
    """Validate ``S`` and return the class of its value."""
    validate_defining_system(D, S)
    return reduce_class(D, defining_system_value_element(D, S))


# ---------------------------------------------------------------- parametrized elements

class ParamPoly:
    """Polynomial in scalar parameters with coefficients in a DGA."""

    __slots__ = ("algebra", "degree", "terms")

    def __init__(self, algebra, degree: int, terms: Mapping[PMono, Element] = ()):
        self.algebra = algebra
        self.degree = degree
        self.terms: Dict[PMono, Element] = {m: e for m, e in dict(terms).items() if e}

    @classmethod
    def const(cls, e: Element) -> "ParamPoly":
        return cls(e.algebra, e.degree, {(): e})

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        terms = dict(self.terms)
        for m, e in other.terms.items():
            terms[m] = terms[m] + e if m in terms else e
        return ParamPoly(self.algebra, self.degree, terms)

    def __neg__(self):
        return ParamPoly(self.algebra, self.degree, {m: -e for m, e in self.terms.items()})

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        terms: Dict[PMono, Element] = {}
        for m1, e1 in self.terms.items():
            for m2, e2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                p = e1 * e2
                terms[m] = terms[m] + p if m in terms else p
        return ParamPoly(self.algebra, self.degree + other.degree, terms)

    def bar(self) -> "ParamPoly":
        return -self if self.degree % 2 else self

    def variables(self) -> set:
        return {v for m in self.terms for v in m}

    def evaluate(self, point: Mapping[int, Fraction]) -> Element:
        total = self.algebra.zero(self.degree)
        for m, e in self.terms.items():
            c = Fraction(1)
            for v in m:
                c *= point.get(v, 0)
            if c:
                total = total + e * c
        return Element(self.algebra, total.terms, self.degree)

    def substitute(self, subst: Mapping[int, Tuple[Fraction, Dict[int, Fraction]]]) -> "ParamPoly":
        """Replace variables by affine expressions ``const + sum(lin)``."""
        terms: Dict[PMono, Element] = {}
        for m, e in self.terms.items():
            scalar: Dict[PMono, Fraction] = {(): Fraction(1)}
            for v in m:
                if v in subst:
                    c0, lin = subst[v]
                    factor = {(): Fraction(c0)} if c0 else {}
                    for w, c in lin.items():
                        factor[(w,)] = factor.get((w,), 0) + c
                else:
                    factor = {(v,): Fraction(1)}
                nxt: Dict[PMono, Fraction] = {}
                for a, ca in scalar.items():
                    for b, cb in factor.items():
                        k = tuple(sorted(a + b))
                        nxt[k] = nxt.get(k, 0) + ca * cb
                scalar = {k: c for k, c in nxt.items() if c}
            for k, c in scalar.items():
                p = e * c
                terms[k] = terms[k] + p if k in terms else p
        return ParamPoly(self.algebra, self.degree, terms)


def _class_poly(D: DGA, P: ParamPoly) -> Dict[PMono, Vector]:
    """Cohomology coordinates of every coefficient (all must be closed)."""
    out = {}
    for m, e in P.terms.items():
        coords, _ = class_coordinates(D, Element(D.algebra, e.terms, P.degree))
        vec = {i: c for i, c in enumerate(coords) if c}
        if vec:
            out[m] = vec
    return out


def _primitive_poly(D: DGA, P: ParamPoly, degree: int) -> ParamPoly:
    terms = {}
    for m, e in P.terms.items():
        w = primitive(D, Element(D.algebra, e.terms, P.degree))
        if w is None:
            raise AlgebraError("internal: coefficient expected to be exact")
        terms[m] = Element(D.algebra, w.terms, degree)
    return ParamPoly(D.algebra, degree, terms)


def _cocycle_basis(D: DGA, k: int) -> List[Element]:
    cache = D.__dict__.setdefault("_cocycle_cache", {})
    if k not in cache:
        cycles, _ = kernel_and_image(D.images(k))
        cache[k] = [D.algebra.from_vector(k, z) for z in cycles]
    return cache[k]


class _Params:
    """Registry of scalar parameters, each tied to a block label."""

    def __init__(self):
        self.block: List[Hashable] = []

    def new(self, block) -> int:
        self.block.append(block)
        return len(self.block) - 1


def _free_shift(D: DGA, params: _Params, block, degree: int) -> ParamPoly:
    terms = {}
    for z in _cocycle_basis(D, degree):
        v = params.new(block)
        terms[(v,)] = z
    return ParamPoly(D.algebra, degree, terms)


def _equations(polys: Sequence[ParamPoly], D: DGA):
    """Coordinate equations forcing each polynomial's class to vanish."""
    eqs: List[Dict[PMono, Fraction]] = []
    for P in polys:
        cp = _class_poly(D, P)
        rows: Dict[int, Dict[PMono, Fraction]] = {}
        for m, vec in cp.items():
            for i, c in vec.items():
                rows.setdefault(i, {})[m] = c
        eqs.extend(rows[i] for i in sorted(rows))
    return eqs


def _solve_linear(eqs: List[Dict[PMono, Fraction]]):
    """Solve equations whose monomials have degree <= 1.

    Returns ``None`` if inconsistent, else a substitution for the pivot
    variables in terms of the remaining free ones.
    """
    variables = sorted({m[0] for eq in eqs for m in eq if m})
    col = {v: i for i, v in enumerate(variables)}
    rows = [({col[m[0]]: c for m, c in eq.items() if m}, eq.get((), Fraction(0))) for eq in eqs]
    sol = solve_affine(rows, len(variables))
    if sol is None:
        return None
    particular, free, directions = sol
    free_vars = {variables[f] for f in free}
    subst = {}
    for i, v in enumerate(variables):
        if v in free_vars:
            continue
        lin = {}
        for f in free:
            c = directions[f].get(i)
            if c:
                lin[variables[f]] = c
        subst[v] = (particular.get(i, Fraction(0)), lin)
    return subst


class _ValueFamily:
    """A value polynomial plus the machinery to instantiate witnesses."""

    def __init__(self, D: DGA, value: ParamPoly, params: _Params, complete: bool, instantiate):
        self.D = D
        self.value = value
        self.params = params
        self.complete = complete
        self.instantiate = instantiate  # point -> (witness, value element)
        self.cp = _class_poly(D, value)
        self.free = sorted(value.variables() | self._extra_vars())

    def _extra_vars(self):
        return set()

    def constant(self) -> Vector:
        return dict(self.cp.get((), {}))

    def class_at(self, point: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for m, vec in self.cp.items():
            c = Fraction(1)
            for v in m:
                c *= point.get(v, 0)
            if c:
                axpy(out, c, vec)
        return out


def _decide(fam: _ValueFamily, policy: SearchPolicy, H_dim: int) -> Tuple[str, object, dict, list]:
    """Three-tier verdict on a value family."""
    cp = fam.cp
    v0 = fam.constant()
    linear = {m[0]: vec for m, vec in cp.items() if len(m) == 1}
    higher = {m: vec for m, vec in cp.items() if len(m) >= 2}
    W = Echelon()
    for m in sorted(cp):
        if m:
            W.insert(cp[m], m)
    proof = {"constant": v0, "variation_rank": W.rank, "complete": fam.complete,
             "nonlinear_terms": len(higher)}

    def try_point(point):
        witness, val_elem = fam.instantiate(point)
        cls = reduce_class(fam.D, val_elem)
        if cls.is_zero():
            return witness
        return None

    if not v0 and not any(cp.values()):
        return "vanishes", try_point({}), proof, []
    residual, _ = W.reduce(v0)
    if residual and fam.complete:
        proof["residual"] = residual
        return "nonzero_certified", None, proof, [tuple(v0.get(i, 0) for i in range(H_dim))]

    # affine part: solve constant + linear = 0
    lin_ech = Echelon()
    for v in sorted(linear):
        lin_ech.insert(linear[v], v)
    combo = lin_ech.express({i: -c for i, c in v0.items()})
    if combo is not None:
        point = {v: c for v, c in combo.items()}
        w = try_point(point)
        if w is not None:
            return "vanishes", w, proof, []

    # block sweeps around a start point, then random restarts
    blocks: Dict[Hashable, List[int]] = {}
    for v in fam.free:
        blocks.setdefault(fam.params.block[v], []).append(v)
    rng = random.Random(policy.seed)
    samples = []
    starts = [{}]
    for _ in range(policy.samples):
        starts.append({v: Fraction(rng.randint(-3, 3)) for v in fam.free})
    for start in starts:
        point = dict(start)
        samples.append(tuple(fam.class_at(point).get(i, Fraction(0)) for i in range(H_dim)))
        if not fam.class_at(point):
            w = try_point(point)
            if w is not None:
                return "vanishes", w, proof, samples
        for _ in range(max(1, policy.max_sweeps)):
            for block in sorted(blocks, key=str):
                found, point = _block_step(fam, blocks[block], point)
                if found:
                    w = try_point(point)
                    if w is not None:
                        return "vanishes", w, proof, samples
    return "undecided", None, proof, samples


def _block_step(fam: _ValueFamily, block_vars: List[int], point: Dict[int, Fraction]):
    """Solve for the block's parameters with the others frozen.

    Returns ``(True, point)`` if the class can be made zero, otherwise moves
    the block to zero out as long a prefix of coordinates as possible.
    """
    bset = set(block_vars)
    const: Vector = {}
    lin: Dict[int, Vector] = {}
    for m, vec in fam.cp.items():
        inside = [v for v in m if v in bset]
        c = Fraction(1)
        for v in m:
            if v not in bset:
                c *= point.get(v, 0)
        if not c:
            continue
        if len(inside) == 0:
            axpy(const, c, vec)
        elif len(inside) == 1:
            lin.setdefault(inside[0], {})
            axpy(lin[inside[0]], c, vec)
        else:
            return False, point  # not affine in this block
    coords = sorted(set(const) | {i for v in lin.values() for i in v})
    best = None
    for upto in range(len(coords), 0, -1):
        keep = set(coords[:upto])
        rows = []
        for i in coords[:upto]:
            rows.append(({k: lin[v].get(i, 0) for k, v in enumerate(block_vars) if v in lin and lin[v].get(i)},
                         const.get(i, Fraction(0))))
        sol = solve_affine(rows, len(block_vars))
        if sol is not None:
            best = (sol[0], upto == len(coords))
            break
    new = dict(point)
    if best is None:
        return (not coords), new
    particular, full = best
    for k, v in enumerate(block_vars):
        new[v] = particular.get(k, Fraction(0))
    return full, new


# ---------------------------------------------------------------- triple products

def triple_massey(D: DGA, c1, c2, c3) -> MasseyResult:
    """<c1, c2, c3> with exact indeterminacy and an exact zero decision."""
    a1, a2, a3 = _check_reps(D, [c1, c2, c3])
    p1, p2, p3 = a1.degree, a2.degree, a3.degree
    q = p1 + p2 + p3 - 1
    check_window(D, q)
    a12 = primitive(D, Element(D.algebra, (a1 * a2).terms, p1 + p2))
    if a12 is None:
        raise MasseyUndefined("product of the first two classes is not exact", (1, 2),
                              reduce_class(D, Element(D.algebra, (a1 * a2).terms, p1 + p2)))
    a23 = primitive(D, Element(D.algebra, (a2 * a3).terms, p2 + p3))
    if a23 is None:
        raise MasseyUndefined("product of the last two classes is not exact", (2, 3),
                              reduce_class(D, Element(D.algebra, (a2 * a3).terms, p2 + p3)))
    a12 = Element(D.algebra, a12.terms, p1 + p2 - 1)
    a23 = Element(D.algebra, a23.terms, p2 + p3 - 1)
    sign = -1 if (p1 + 1) % 2 else 1
    value = Element(D.algebra, (a1 * a23 + a12 * a3 * sign).terms, q)
    vcls = reduce_class(D, value)

    H = cohomology_basis(D, q)
    W = Echelon()
    left = [Element(D.algebra, (a1 * h).terms, q) for h in cohomology_basis(D, p2 + p3 - 1).representatives]
    right = [Element(D.algebra, (h * a3).terms, q) for h in cohomology_basis(D, p1 + p2 - 1).representatives]
    for n, e in enumerate(left):
        W.insert(dict(enumerate_coords(D, e)), ("L", n))
    for n, e in enumerate(right):
        W.insert(dict(enumerate_coords(D, e)), ("R", n))
    indet = [tuple(row.get(i, Fraction(0)) for i in range(H.betti)) for row in W.reduced_rows()]
    vvec = {i: c for i, c in enumerate(vcls.coords) if c}
    combo = W.express(vvec)
    result = MasseyResult("triple", 3, q, "", vcls, indet)
    result.proof = {"value_coords": vcls.coords, "indeterminacy_rank": W.rank}
    if combo is None:
        result.verdict = "nonzero_certified"
        return result
    hl = cohomology_basis(D, p2 + p3 - 1).representatives
    hr = cohomology_basis(D, p1 + p2 - 1).representatives
    b23, b12 = a23, a12
    for (side, n), c in combo.items():
        if side == "L":
            b23 = b23 - hl[n] * c
        else:
            b12 = b12 - hr[n] * (c * sign)
    S = triple_to_system(a1, a2, a3, b12, b23)
    zero = defining_system_value(D, S)
    assert zero.is_zero()
    result.verdict = "vanishes"
    result.witness = S
    return result


def enumerate_coords(D: DGA, e: Element):
    coords, _ = class_coordinates(D, e)
    return {i: c for i, c in enumerate(coords) if c}


def triple_to_system(a1, a2, a3, a12, a23) -> DefiningSystem:
    """Convert d a12 = a1 a2, d a23 = a2 a3 into the signed convention."""
    s12 = -1 if a1.degree % 2 else 1
    s23 = -1 if a2.degree % 2 else 1
    return DefiningSystem(3, {(1, 1): a1, (2, 2): a2, (3, 3): a3,
                              (1, 2): a12 * s12, (2, 3): a23 * s23})


# ---------------------------------------------------------------- higher products

@dataclass
class SystemFamily:
    """All defining systems with a fixed diagonal, as parameter polynomials."""

    order: int
    entries: Dict[Tuple[int, int], ParamPoly]
    params: _Params
    complete: bool
    pinned: Dict[int, Fraction]

    def instantiate(self, point: Mapping[int, Fraction]) -> DefiningSystem:
        full = dict(self.pinned)
        full.update(point)
        return DefiningSystem(self.order, {ij: P.evaluate(full) for ij, P in self.entries.items()})


def build_system_family(D: DGA, reps: Sequence[Element], rng: Optional[random.Random] = None,
                        raise_undefined: bool = True) -> Optional[SystemFamily]:
    """Parametrize every defining system on the given diagonal.

    Returns ``None`` (or raises :class:`MasseyUndefined` when the failure is
    exact) if no defining system exists.
    """
    t = len(reps)
    params = _Params()
    entries: Dict[Tuple[int, int], ParamPoly] = {}
    degs = [r.degree for r in reps]
    for i, r in enumerate(reps, start=1):
        entries[(i, i)] = ParamPoly.const(r)
    complete = True
    pinned: Dict[int, Fraction] = {}

    def deg(i, j):
        return sum(degs[i - 1:j]) - (j - i)

    for ell in range(1, t - 1):
        cells = [(i, i + ell) for i in range(1, t - ell + 1)]
        targets = {}
        for i, j in cells:
            total = None
            for k in range(i, j):
                term = entries[(i, k)].bar() * entries[(k + 1, j)]
                total = term if total is None else total + term
            targets[(i, j)] = ParamPoly(D.algebra, deg(i, j) + 1, total.terms)
        for _, T in targets.items():
            check_window(D, T.degree)
        eqs = _equations(list(targets.values()), D)
        nonlinear = {v for eq in eqs for m in eq if len(m) >= 2 for v in m}
        if nonlinear:
            complete = False
            vals = {v: Fraction(rng.randint(-2, 2)) if rng else Fraction(0) for v in sorted(nonlinear)}
            pinned.update(vals)
            sub = {v: (c, {}) for v, c in vals.items()}
            entries = {ij: P.substitute(sub) for ij, P in entries.items()}
            targets = {ij: P.substitute(sub) for ij, P in targets.items()}
            eqs = _equations(list(targets.values()), D)
        subst = _solve_linear(eqs)
        if subst is None:
            if raise_undefined and complete:
                first = next(ij for ij in cells if _class_poly(D, targets[ij]).get(()) is not None
                             or True)
                obstruction = None
                for ij in cells:
                    T = targets[ij]
                    cp = _class_poly(D, T)
                    if cp and all(len(m) == 0 for m in cp):
                        first = ij
                        obstruction = reduce_class(D, T.evaluate({}))
                        break
                raise MasseyUndefined(
                    f"no defining system: boundary conditions at level {ell} cannot be met",
                    first, obstruction)
            return None
        if subst:
            entries = {ij: P.substitute(subst) for ij, P in entries.items()}
            targets = {ij: P.substitute(subst) for ij, P in targets.items()}
        for (i, j) in cells:
            prim = _primitive_poly(D, targets[(i, j)], deg(i, j))
            entries[(i, j)] = prim + _free_shift(D, params, (i, j), deg(i, j))
    return SystemFamily(t, entries, params, complete, pinned)


def _value_poly(D: DGA, fam: SystemFamily, degree: int) -> ParamPoly:
    t = fam.order
    total = None
    for k in range(1, t):
        term = fam.entries[(1, k)].bar() * fam.entries[(k + 1, t)]
        total = term if total is None else total + term
    return ParamPoly(D.algebra, degree, total.terms)


def higher_massey_search(D: DGA, classes: Sequence, policy: Optional[SearchPolicy] = None) -> MasseyResult:
    """Massey product of order t >= 4 with the three-tier verdict."""
    policy = policy or SearchPolicy()
    if len(classes) < 4:
        raise AlgebraError("higher_massey_search needs at least four classes; use triple_massey")
    return _massey_via_family(D, classes, policy)


def _massey_via_family(D: DGA, classes: Sequence, policy: SearchPolicy) -> MasseyResult:
    reps = _check_reps(D, classes)
    t = len(reps)
    q = sum(r.degree for r in reps) - (t - 2)
    check_window(D, q)
    fam = build_system_family(D, reps)
    result = MasseyResult("higher" if t >= 4 else "triple", t, q, "undecided")
    if fam is None:
        rng = random.Random(policy.seed)
        for _ in range(policy.samples):
            fam = build_system_family(D, reps, rng=rng, raise_undefined=False)
            if fam is not None:
                break
        if fam is None:
            result.notes.append("definedness not established: nonlinear constraints, no sample satisfied them")
            return result
    if not fam.complete:
        result.notes.append("parametrization pinned nonlinear parameters; nonzero results cannot be certified")
    value = _value_poly(D, fam, q)

    def instantiate(point):
        S = fam.instantiate(point)
        validate_defining_system(D, S)
        return S, defining_system_value_element(D, S)

    vf = _ValueFamily(D, value, fam.params, fam.complete, instantiate)
    H = cohomology_basis(D, q)
    verdict, witness, proof, samples = _decide(vf, policy, H.betti)
    if verdict == "undecided" and _lefschetz_ok(D, policy) and t >= 4:
        witness = _lefschetz_witness(lambda: _constructive().constructive_massey_vanishing(D, classes))
        if witness is not None:
            verdict = "vanishes"
            proof["method"] = "lefschetz_constructive"
    result.verdict = verdict
    result.witness = witness
    result.proof = proof
    result.samples = samples
    result.value = reduce_class(D, instantiate({})[1])
    W = Echelon()
    for m, vec in vf.cp.items():
        if m:
            W.insert(vec)
    result.indeterminacy = [tuple(r.get(i, Fraction(0)) for i in range(H.betti)) for r in W.reduced_rows()]
    if verdict == "vanishes":
        assert defining_system_value(D, witness).is_zero()
    return result


def _constructive():
    from . import geomodels
    return geomodels


def _lefschetz_ok(D: DGA, policy: SearchPolicy) -> bool:
    return policy.accept_lefschetz and getattr(D, "lefschetz_ring", None) is not None


def _lefschetz_witness(build):
    """Run a constructive procedure; ``None`` if its hypotheses fail."""
    try:
        return build()
    except AlgebraError:
        return None


def massey_product(D: DGA, classes: Sequence, policy: Optional[SearchPolicy] = None) -> MasseyResult:
    if len(classes) == 3:
        return triple_massey(D, *classes)
    return higher_massey_search(D, classes, policy)


# ---------------------------------------------------------------- a-Massey products

def amassey_value_element(D: DGA, bs: Sequence[Element], xis: Sequence[Element], degree: int) -> Element:
    m = len(bs)
    total = D.algebra.zero(degree)
    for i in range(m):
        sign = -1 if sum(x.degree for x in xis[:i]) % 2 else 1
        term = D.algebra.one()
        for x in xis[:i]:
            term = term * x
        term = term * bs[i]
        for x in xis[i + 1:]:
            term = term * x
        total = total + term * sign
    return Element(D.algebra, total.terms, degree)


def validate_primitives(D: DGA, a: Element, bs: Sequence[Element], xis: Sequence[Element]):
    for i, (b, x) in enumerate(zip(bs, xis), start=1):
        residue = D.d(x) - a * b
        if residue:
            raise DefiningSystemError(0, i, residue)


def a_massey(D: DGA, a, bs: Sequence, policy: Optional[SearchPolicy] = None) -> MasseyResult:
    """<a; b_1, ..., b_m> for an even-degree class ``a`` and m >= 3."""
    policy = policy or SearchPolicy()
    if len(bs) < 3:
        raise AlgebraError("a-Massey products need at least three classes b_i")
    (arep,) = _check_reps(D, [a])
    breps = _check_reps(D, bs)
    if arep.degree % 2:
        raise AlgebraError("the class a must have even degree")
    m = len(breps)
    q = (m - 1) * arep.degree + sum(b.degree for b in breps) - m + 1
    check_window(D, q)
    params = _Params()
    xis = []
    for i, b in enumerate(breps, start=1):
        prod = Element(D.algebra, (arep * b).terms, arep.degree + b.degree)
        w = primitive(D, prod)
        if w is None:
            raise MasseyUndefined(f"a*b_{i} is not exact", (0, i), reduce_class(D, prod))
        deg = prod.degree - 1
        xis.append(ParamPoly(D.algebra, deg, {(): Element(D.algebra, w.terms, deg)})
                   + _free_shift(D, params, i, deg))
    total = None
    for i in range(m):
        sign = -1 if sum(x.degree for x in xis[:i]) % 2 else 1
        term = ParamPoly.const(D.algebra.one())
        for x in xis[:i]:
            term = term * x
        term = term * ParamPoly.const(breps[i])
        for x in xis[i + 1:]:
            term = term * x
        term = -term if sign < 0 else term
        total = term if total is None else total + term
    value = ParamPoly(D.algebra, q, total.terms)

    def instantiate(point):
        chosen = [x.evaluate(point) for x in xis]
        validate_primitives(D, arep, breps, chosen)
        return tuple(chosen), amassey_value_element(D, breps, chosen, q)

    vf = _ValueFamily(D, value, params, True, instantiate)
    H = cohomology_basis(D, q)
    verdict, witness, proof, samples = _decide(vf, policy, H.betti)
    if verdict == "undecided" and _lefschetz_ok(D, policy):
        witness = _lefschetz_witness(lambda: _constructive().constructive_amassey_vanishing(D, a, bs))
        if witness is not None:
            verdict = "vanishes"
            proof["method"] = "lefschetz_constructive"
    result = MasseyResult("a-massey", m, q, verdict, reduce_class(D, instantiate({})[1]),
                          witness=witness, proof=proof, samples=samples)
    W = Echelon()
    for mono, vec in vf.cp.items():
        if mono:
            W.insert(vec)
    result.indeterminacy = [tuple(r.get(i, Fraction(0)) for i in range(H.betti)) for r in W.reduced_rows()]
    if verdict == "vanishes":
        if proof.get("method") == "lefschetz_constructive":
            # the constructive witness lives over the split representatives
            split = _constructive().split_class_representative
            arep, breps = split(D, a), [split(D, b) for b in bs]
        validate_primitives(D, arep, breps, witness)
        assert reduce_class(D, amassey_value_element(D, breps, witness, q)).is_zero()
    return result
