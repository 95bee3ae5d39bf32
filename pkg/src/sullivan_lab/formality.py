"""s-formality of minimal algebras, the dimension rule, quasi-isomorphisms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Union

from .cohomology import class_coordinates, cohomology_basis, reduce_class
from .dga import DGA, FreeDGA
from .gca import AlgebraError, Element
from .linalg import Echelon, kernel_and_image, rank


class NotMinimal(AlgebraError):
    pass


@dataclass
class CNDecomposition:
    """Closed part C^i and a complement N^i of the generators of degree i."""

    C: Dict[int, List[Element]]
    N: Dict[int, List[Element]]

    def describe(self) -> Dict[int, Dict[str, List[str]]]:
        degrees = sorted(set(self.C) | set(self.N))
        return {i: {"C": [str(e) for e in self.C.get(i, [])],
                    "N": [str(e) for e in self.N.get(i, [])]} for i in degrees}


@dataclass
class FormalityVerdict:
    status: str
    s: int
    cap: int
    witness: Optional[Element] = None
    witness_degree: Optional[int] = None
    complement: Dict[int, Dict[str, List[str]]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def positive(self) -> bool:
        return self.status in ("s_formal_up_to_cap", "formal_by_dimension_rule")

    def lines(self) -> List[str]:
        out = [f"status: {self.status}", f"s: {self.s}", f"cap: {self.cap}"]
        if self.witness is not None:
            out.append(f"witness (degree {self.witness_degree}): {self.witness}")
        out.extend(f"note: {n}" for n in self.notes)
        return out


def _require_minimal(D: DGA) -> FreeDGA:
    if not isinstance(getattr(D, "_inner", D), FreeDGA) or not getattr(D, "minimal", False):
        raise NotMinimal("formality checks need a minimal free DGA")
    return D


def cn_decomposition(D: DGA, s: int) -> CNDecomposition:
    """C^i = closed generators of degree i, N^i = the generators that are not
    pivots of the closed subspace (so d is injective on N^i), for i <= s."""
    _require_minimal(D)
    A = D.algebra
    C, N = {}, {}
    for i in range(1, s + 1):
        gens = [g for g in A.generators if g.degree == i]
        if not gens:
            continue
        idx = A.index(i + 1) if A.computable(i + 1) else None
        images = []
        for g in gens:
            img = D.diff[g.name]
            images.append({idx[m]: c for m, c in img.terms.items()} if img else {})
        kernel, _ = kernel_and_image(images)
        ech = Echelon()
        for v in kernel:
            ech.insert(v)
        closed = []
        for row in ech.reduced_rows():
            closed.append(sum((A.gen(gens[j].name) * c for j, c in sorted(row.items())), A.zero(i)))
        pivots = set(ech.pivots())
        C[i] = [Element(A, e.terms, i) for e in closed]
        N[i] = [A.gen(gens[j].name) for j in range(len(gens)) if j not in pivots]
    return CNDecomposition(C, N)


def _low_monomials(A, k: int, s: int):
    """Degree-k monomials only involving generators of degree <= s."""
    ok = [g.degree <= s for g in A.generators]
    return [m for m in A.basis(k) if all(e == 0 or ok[i] for i, e in enumerate(m))]


def ideal_closed_elements(D: DGA, dec: CNDecomposition, s: int, q: int) -> List[Element]:
    """Basis of the closed elements of degree q in the ideal generated by
    N^{<=s} inside the subalgebra on generators of degree <= s."""
    A = D.algebra
    spanning = []
    for i, ns in sorted(dec.N.items()):
        if i > s or i > q:
            continue
        for m in _low_monomials(A, q - i, s):
            mono = Element(A, {m: 1}, q - i)
            for nn in ns:
                prod = nn * mono
                if prod:
                    spanning.append(Element(A, prod.terms, q))
    if not spanning:
        return []
    idx = A.index(q)
    span = Echelon()
    vectors = []
    for e in spanning:
        v = {idx[k]: c for k, c in e.terms.items()}
        if span.insert(v) is not None:
            vectors.append(e)
    images = [D.d(e).vector(q + 1) for e in vectors]
    kernel, _ = kernel_and_image(images)
    out = []
    for combo in kernel:
        w = A.zero(q)
        for j, c in sorted(combo.items()):
            w = w + vectors[j] * c
        w = Element(A, w.terms, q)
        if w:
            out.append(w)
    return out


def s_formality_check(D: DGA, s: int, cap: int) -> FormalityVerdict:
    """Look for a closed, non-exact element of the ideal I(N^{<=s}) in degrees < cap."""
    _require_minimal(D)
    if hasattr(D, "with_cap") and D.cap != cap and not D.algebra.vanishes_above_cap():
        D = D.with_cap(cap)
    dec = cn_decomposition(D, s)
    verdict = FormalityVerdict("s_formal_up_to_cap", s, cap, complement=dec.describe())
    if cap < 2 * s + 1:
        msg = f"cap {cap} is below 2s+1 = {2 * s + 1}; the check may miss witnesses"
        warnings.warn(msg)
        verdict.notes.append(msg)
    verdict.notes.append("complement N^i fixed canonically (non-pivot generators); negative verdicts are relative to it")
    top = cap - 1
    if D.algebra.vanishes_above_cap():
        top = max(top, 0)
    for q in range(1, top + 1):
        if not D.algebra.computable(q + 1):
            break
        for w in ideal_closed_elements(D, dec, s, q):
            coords, _ = class_coordinates(D, w)
            if any(coords):
                lead = w.sorted_terms()[0][1]
                w = Element(w.algebra, (w / lead).terms, q)
                coords, _ = class_coordinates(D, w)
                verdict.status = "not_s_formal"
                verdict.witness = w
                verdict.witness_degree = q
                verdict.notes.append(f"witness class coordinates: {[str(c) for c in coords]}")
                return verdict
    return verdict


def revalidate_witness(D: DGA, verdict: FormalityVerdict) -> bool:
    """Closed, in the ideal, and not exact."""
    w = verdict.witness
    if w is None:
        return False
    if hasattr(D, "with_cap") and D.cap != verdict.cap and not D.algebra.vanishes_above_cap():
        D = D.with_cap(verdict.cap)
        w = Element(D.algebra, w.terms, w.degree)
    if D.d(w):
        return False
    dec = cn_decomposition(D, verdict.s)
    ech = Echelon()
    q = w.degree
    idx = D.algebra.index(q)
    for e in ideal_closed_elements(D, dec, verdict.s, q):
        ech.insert({idx[k]: c for k, c in e.terms.items()})
    if not ech.contains({idx[k]: c for k, c in w.terms.items()}):
        return False
    return not reduce_class(D, w).is_zero()


def formality_by_dimension(D: DGA, manifold_dim: int, cap: int) -> FormalityVerdict:
    """A compact orientable manifold of dimension 2n or 2n-1 is formal iff it
    is (n-1)-formal; the manifold hypothesis is the caller's assertion."""
    n = (manifold_dim + 1) // 2
    v = s_formality_check(D, n - 1, cap)
    v.notes.append(f"dimension {manifold_dim} gives n = {n}; model asserted to be that of a compact orientable manifold")
    if v.status == "s_formal_up_to_cap":
        v.status = "formal_by_dimension_rule"
        v.notes.append(f"{n - 1}-formal, hence formal by the dimension rule")
    else:
        v.status = "not_formal"
        v.notes.append(f"not {n - 1}-formal, hence not formal")
    return v


# ---------------------------------------------------------------- quasi-isomorphisms

@dataclass
class QuasiIsoReport:
    chain_map: bool
    holds: bool
    degrees: List[Dict[str, int]]
    first_failure: Optional[int] = None
    reason: str = ""

    def lines(self) -> List[str]:
        out = [f"H^{d['degree']}: source {d['source_betti']}, target {d['target_betti']}, rank {d['rank']}"
               for d in self.degrees]
        if self.holds:
            out.append(f"quasi-isomorphism up to degree {self.degrees[-1]['degree'] if self.degrees else 0}")
        else:
            out.append(f"not a quasi-isomorphism: {self.reason}")
        return out


def _map_element(src: DGA, dst: DGA, gen_images: List[Element], e: Element) -> Element:
    B = dst.algebra
    total = B.zero(e.degree)
    for m, c in e.terms.items():
        term = B.one()
        for i, ex in enumerate(m):
            for _ in range(ex):
                term = term * gen_images[i]
        total = total + term * c
    return Element(B, total.terms, e.degree)


def quasi_iso_check(src: DGA, dst: DGA, images: Mapping[str, Union[str, Element]], cap: int) -> QuasiIsoReport:
    if isinstance(src, FreeDGA) and src.cap != cap:
        src = src.with_cap(cap)
    if isinstance(dst, FreeDGA) and dst.cap < cap and not dst.algebra.vanishes_above_cap():
        dst = dst.with_cap(cap)
    A, B = src.algebra, dst.algebra
    gen_images = []
    for g in A.generators:
        img = images.get(g.name, B.zero(g.degree))
        if isinstance(img, str):
            img = B.element(img)
        elif img.algebra is not B:
            img = Element(B, img.terms, img.degree)
        if img and img.degree != g.degree:
            raise AlgebraError(f"image of {g.name!r} has degree {img.degree}, expected {g.degree}")
        gen_images.append(Element(B, img.terms, g.degree))
    for g, img in zip(A.generators, gen_images):
        lhs = _map_element(src, dst, gen_images, src.diff[g.name])
        rhs = dst.d(img)
        if lhs != rhs:
            return QuasiIsoReport(False, False, [], g.degree,
                                  f"does not commute with d on {g.name}")
    degrees = []
    for k in range(cap):
        Hs = cohomology_basis(src, k)
        Ht = cohomology_basis(dst, k)
        vecs = []
        for r in Hs.representatives:
            coords, _ = class_coordinates(dst, _map_element(src, dst, gen_images, r))
            vecs.append({i: c for i, c in enumerate(coords) if c})
        r = rank(vecs)
        degrees.append({"degree": k, "source_betti": Hs.betti, "target_betti": Ht.betti, "rank": r})
        if not (Hs.betti == Ht.betti == r):
            why = "not surjective" if r < Ht.betti else "not injective"
            return QuasiIsoReport(True, False, degrees, k, f"H^{k} map {why}")
    return QuasiIsoReport(True, True, degrees)
