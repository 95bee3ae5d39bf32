"""Command-line front end.

Exit codes: 0 success, 1 a negative mathematical verdict (non-formal,
Lefschetz failure, obstruction found, Massey product not defined, a failing
corpus check), 2 usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import class_of, cohomology_basis, cup
from .dga import DGA, DGAError, FreeDGA
from .documents import (
    AlgebraDocument, DocumentError, corpus_entry, corpus_ids, parse_algebra_file, serialize,
)
from .expr import ExpressionError
from .formality import formality_by_dimension, quasi_iso_check, s_formality_check
from .gca import AlgebraError, CapOverflow, Element, format_rational
from .geomodels import (
    FiniteGradedRing, circle_bundle_model, hard_lefschetz_check, obstruction_report,
    sphere_bundle_model, tievsky_model,
)
from .gysin import IntegralGradedRing, gysin_total
from .massey import MasseyUndefined, SearchPolicy, a_massey, massey_product


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("SULLIVAN_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"SULLIVAN_LAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("SULLIVAN_LAB_THREADS must be at least 1")
    return n


def _degrees(text: Optional[str], default: Tuple[int, int]) -> List[int]:
    if text is None:
        lo, hi = default
    else:
        try:
            lo_s, hi_s = text.split("..")
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise UsageError(f"--degrees expects a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad degree range {lo}..{hi}")
    return list(range(lo, hi + 1))


def _q(c) -> str:
    return format_rational(Fraction(c))


def _emit(args, data: Dict, lines: Sequence[str]):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _load(args, kinds=None) -> Tuple[AlgebraDocument, object]:
    doc = parse_algebra_file(args.target)
    if kinds and doc.kind not in kinds:
        raise UsageError(f"this command needs a {' or '.join(kinds)} document, got {doc.kind}")
    obj = doc.build()
    cap = getattr(args, "cap", None)
    if cap is not None:
        if not isinstance(obj, FreeDGA):
            raise UsageError("--cap only applies to free_dga documents")
        obj = obj.with_cap(cap)
    return doc, obj


def _as_dga(obj) -> DGA:
    if isinstance(obj, DGA):
        return obj
    from .dga import ZeroDGA
    return ZeroDGA(obj)


def _class_list(D: DGA, text: str):
    return [class_of(D, t.strip()) for t in _split_top(text)]


def _split_top(text: str) -> List[str]:
    parts = [p for p in text.split(",")]
    if any(not p.strip() for p in parts):
        raise UsageError(f"empty class in {text!r}")
    return parts


# ---------------------------------------------------------------- subcommands

def cmd_validate(args) -> int:
    doc, obj = _load(args)
    data = {"kind": doc.kind, "canonical": json.loads(serialize(doc))}
    lines = [f"kind: {doc.kind}"]
    if isinstance(obj, FreeDGA):
        data["minimal"] = obj.minimal
        data["cap"] = obj.cap
        lines.append("generators: " + ", ".join(f"{g.name}:{g.degree}" for g in obj.algebra.generators))
        for g in obj.algebra.generators:
            if obj.diff[g.name]:
                lines.append(f"d{g.name} = {obj.diff[g.name]}")
        lines.append(f"cap: {obj.cap}")
        lines.append(f"minimal: {'yes' if obj.minimal else 'no'}")
        lines.append("d^2 = 0: ok")
    else:
        lines.append("basis: " + ", ".join(f"{n}:{obj.key_degree(n)}" for n in obj.names if n != "1"))
        lines.append("associativity and graded commutativity: ok")
    _emit(args, data, lines)
    return 0


def cmd_cohomology(args) -> int:
    _, obj = _load(args)
    D = _as_dga(obj)
    top = D.cap - 1 if not D.algebra.vanishes_above_cap() else D.cap
    degrees = _degrees(args.degrees, (0, top))
    for k in degrees:
        if not D.algebra.computable(k + 1):
            raise CapOverflow(f"H^{k} is outside the window of cap {D.cap}; raise --cap")
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            bases = list(pool.map(lambda k: cohomology_basis(D, k), degrees))
    else:
        bases = [cohomology_basis(D, k) for k in degrees]
    betti = [H.betti for H in bases]
    lines = ["betti: " + " ".join(map(str, betti))]
    data = {"degrees": degrees, "betti": betti, "classes": {}}
    for k, H in zip(degrees, bases):
        reps = [str(r) for r in H.representatives]
        data["classes"][str(k)] = reps
        lines.append(f"H^{k}: " + (", ".join(f"[{r}]" for r in reps) if reps else "0"))
    _emit(args, data, lines)
    return 0


def cmd_cup(args) -> int:
    _, obj = _load(args)
    D = _as_dga(obj)
    c1, c2 = class_of(D, args.x), class_of(D, args.y)
    c = cup(D, c1, c2)
    coords = [_q(x) for x in c.coords]
    lines = [f"degree: {c.degree}", f"representative: {c.representative}",
             "coordinates: " + " ".join(coords), f"zero: {'yes' if c.is_zero() else 'no'}"]
    _emit(args, {"degree": c.degree, "representative": str(c.representative), "coordinates": coords,
                 "zero": c.is_zero()}, lines)
    return 0


def _policy(args) -> SearchPolicy:
    return SearchPolicy(max_sweeps=args.sweeps, samples=args.samples, seed=args.seed)


def _massey_output(args, res) -> int:
    data = {"kind": res.kind, "order": res.order, "degree": res.degree, "verdict": res.verdict,
            "value": str(res.value.representative) if res.value else None,
            "value_coordinates": [_q(c) for c in res.value.coords] if res.value else [],
            "indeterminacy": [[_q(c) for c in row] for row in res.indeterminacy],
            "notes": res.notes}
    lines = [f"verdict: {res.verdict}", f"degree: {res.degree}"]
    if res.value is not None:
        lines.append(f"representative: {res.value.representative}")
        lines.append("coordinates: " + " ".join(data["value_coordinates"]))
    lines.append(f"indeterminacy rank: {len(res.indeterminacy)}")
    if res.witness is not None:
        if hasattr(res.witness, "format"):
            w = res.witness.format()
        else:
            w = {f"xi{i}": str(x) for i, x in enumerate(res.witness, start=1)}
        data["witness"] = w
        for k in sorted(w, key=lambda s: [int(t) for t in s.lstrip("axi").split(",")]):
            lines.append(f"witness {k} = {w[k]}")
    lines.extend(f"note: {n}" for n in res.notes)
    _emit(args, data, lines)
    return 0


def cmd_massey(args) -> int:
    _, obj = _load(args)
    D = _as_dga(obj)
    classes = _class_list(D, args.classes)
    if len(classes) < 3:
        raise UsageError("massey needs at least three classes")
    try:
        res = massey_product(D, classes, _policy(args))
    except MasseyUndefined as exc:
        _emit(args, {"verdict": "not_defined", "reason": str(exc)}, ["verdict: not_defined", f"reason: {exc}"])
        return 1
    return _massey_output(args, res)


def cmd_amassey(args) -> int:
    _, obj = _load(args)
    D = _as_dga(obj)
    a = class_of(D, args.a)
    bs = _class_list(D, args.classes)
    try:
        res = a_massey(D, a, bs, _policy(args))
    except MasseyUndefined as exc:
        _emit(args, {"verdict": "not_defined", "reason": str(exc)}, ["verdict: not_defined", f"reason: {exc}"])
        return 1
    return _massey_output(args, res)


def cmd_formality(args) -> int:
    _, obj = _load(args, ["free_dga"])
    cap = args.cap if args.cap is not None else obj.cap
    if args.dim is not None:
        v = formality_by_dimension(obj, args.dim, cap)
    elif args.s is not None:
        v = s_formality_check(obj, args.s, cap)
    else:
        raise UsageError("formality needs --s or --dim")
    data = {"status": v.status, "s": v.s, "cap": v.cap, "complement": v.complement,
            "witness": None if v.witness is None else str(v.witness), "notes": v.notes}
    _emit(args, data, v.lines())
    return 0 if v.positive else 1


def cmd_lefschetz(args) -> int:
    _, obj = _load(args, ["finite_ring"])
    rep = hard_lefschetz_check(obj)
    _emit(args, {"n": rep.n, "maps": rep.maps, "holds": rep.holds, "first_failure": rep.first_failure},
          rep.lines())
    return 0 if rep.holds else 1


def _betti_output(args, E, degrees, extra_lines=()):
    betti = [cohomology_basis(E, k).betti for k in degrees]
    lines = list(extra_lines) + ["betti: " + " ".join(map(str, betti))]
    _emit(args, {"degrees": degrees, "betti": betti}, lines)


def cmd_tievsky(args) -> int:
    _, obj = _load(args, ["finite_ring"])
    E = tievsky_model(obj, obj.element(args.cls))
    degrees = _degrees(args.degrees, (0, E.cap))
    _betti_output(args, E, degrees, [f"model: H_B (x) L({E.new_generators[0][0]}), "
                                     f"d{E.new_generators[0][0]} = {args.cls}"])
    return 0


def cmd_bundle(args) -> int:
    _, obj = _load(args, ["free_dga", "finite_ring"])
    if args.fiber == 1:
        E = circle_bundle_model(obj, args.euler)
    else:
        E = sphere_bundle_model(obj, args.fiber, args.euler)
    top = E.cap - 1 if not E.algebra.vanishes_above_cap() else E.cap
    degrees = _degrees(args.degrees, (0, top))
    name = E.new_generators[0][0]
    _betti_output(args, E, degrees, [f"model: base (x) L({name}), d{name} = {args.euler}"])
    return 0


def cmd_gysin(args) -> int:
    _, obj = _load(args, ["integral_ring"])
    res = gysin_total(obj, args.fiber, args.euler)
    if args.degree is not None:
        g = res[args.degree]
        _emit(args, {"degree": args.degree, "group": str(g), "free_rank": g.free_rank,
                     "torsion": list(g.torsion), "resolved": g.resolved}, [str(g)])
        return 0
    data = {"groups": {str(k): str(g) for k, g in enumerate(res.groups)}}
    _emit(args, data, res.lines())
    return 0


def cmd_report(args) -> int:
    model = None
    if args.target:
        _, obj = _load(args, ["free_dga"])
        model = obj
    betti = None
    if args.betti:
        try:
            betti = [int(b) for b in args.betti.split(",")]
        except ValueError:
            raise UsageError("--betti expects comma-separated integers") from None
    if model is None and betti is None:
        raise UsageError("report needs a model or --betti")
    rep = obstruction_report(betti, args.dim, model, _policy(args))
    if args.json:
        print(rep.to_json())
    else:
        for line in rep.lines():
            print(line)
    return 1 if rep.reasons else 0


# ---------------------------------------------------------------- corpus

def run_expectation(entry, item) -> Tuple[bool, object]:
    """Recompute one expected result of a corpus entry."""
    obj = entry.document.build()
    D = _as_dga(obj) if not isinstance(obj, IntegralGradedRing) else None
    check = item["check"]
    if check == "betti":
        lo, hi = item["degrees"]
        got = [cohomology_basis(D, k).betti for k in range(lo, hi + 1)]
        return got == item["value"], got
    if check == "classes":
        got = [str(r) for r in cohomology_basis(D, item["degree"]).representatives]
        return got == item["value"], got
    if check == "massey":
        try:
            got = massey_product(D, [class_of(D, c) for c in item["classes"]]).verdict
        except MasseyUndefined:
            got = "not_defined"
        return got == item["verdict"], got
    if check == "amassey":
        try:
            got = a_massey(D, class_of(D, item["a"]), [class_of(D, c) for c in item["classes"]]).verdict
        except MasseyUndefined:
            got = "not_defined"
        return got == item["verdict"], got
    if check == "formality":
        got = s_formality_check(D, item["s"], item["cap"]).status
        return got == item["status"], got
    if check == "formality_dim":
        got = formality_by_dimension(D, item["dim"], item["cap"]).status
        return got == item["status"], got
    if check == "quasi_iso":
        target = corpus_entry(item["target"]).document.build()
        got = quasi_iso_check(D, target, item["images"], item["cap"]).holds
        return got == item["holds"], got
    if check == "bundle":
        E = circle_bundle_model(D, item["euler"]) if item["fiber"] == 1 else \
            sphere_bundle_model(D, item["fiber"], item["euler"])
        lo, hi = item["degrees"]
        got = [cohomology_basis(E, k).betti for k in range(lo, hi + 1)]
        return got == item["betti"], got
    if check == "lefschetz":
        got = hard_lefschetz_check(obj).holds
        return got == item["holds"], got
    if check == "tievsky":
        E = tievsky_model(obj, item["class"])
        lo, hi = item["degrees"]
        got = [cohomology_basis(E, k).betti for k in range(lo, hi + 1)]
        return got == item["betti"], got
    if check == "gysin":
        got = gysin_total(obj, item["fiber"], item["euler"]).lines()
        return got == item["lines"], got
    if check == "report":
        got = obstruction_report(dimension=item["dimension"], model=D).verdict
        return got == item["verdict"], got
    raise AlgebraError(f"unknown corpus check {check!r}")


def cmd_corpus(args) -> int:
    if args.action == "list":
        ids = corpus_ids()
        lines = [f"{cid}: {corpus_entry(cid).description}" for cid in ids]
        _emit(args, {"entries": ids}, lines)
        return 0
    ids = [args.id] if args.id else corpus_ids()
    if args.action == "show":
        if not args.id:
            raise UsageError("corpus show needs an entry id")
        print(serialize(corpus_entry(args.id).document), end="")
        return 0
    failures = 0
    results = []
    lines = []
    for cid in ids:
        entry = corpus_entry(cid)
        for item in entry.expected:
            ok, got = run_expectation(entry, item)
            failures += not ok
            label = item["check"]
            results.append({"id": cid, "check": label, "ok": ok, "provenance": item["provenance"]})
            lines.append(f"{'PASS' if ok else 'FAIL'} {cid} {label} [{item['provenance']}]"
                         + ("" if ok else f" got {got}"))
    lines.append(f"{len(results) - failures}/{len(results)} checks passed")
    _emit(args, {"results": results, "failures": failures}, lines)
    return 1 if failures else 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sullivan-lab", description="Exact computations with graded DGAs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, target=True, cap=True):
        if target:
            sp.add_argument("target", help="document path, raw JSON, or corpus:<id>")
        if cap:
            sp.add_argument("--cap", type=int, help="override the degree cap of a free DGA")
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")

    def search(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=16)
        sp.add_argument("--sweeps", type=int, default=1)

    sp = sub.add_parser("validate", help="parse and validate a document")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("cohomology", help="Betti numbers and class representatives")
    common(sp)
    sp.add_argument("--degrees", help="degree range a..b")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("cup", help="cup product of two classes")
    common(sp)
    sp.add_argument("x")
    sp.add_argument("y")
    sp.set_defaults(func=cmd_cup)

    sp = sub.add_parser("massey", help="triple or higher Massey product")
    common(sp)
    search(sp)
    sp.add_argument("--classes", required=True, help="comma-separated representatives")
    sp.set_defaults(func=cmd_massey)

    sp = sub.add_parser("amassey", help="a-Massey product <a; b1, ..., bm>")
    common(sp)
    search(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--classes", required=True)
    sp.set_defaults(func=cmd_amassey)

    sp = sub.add_parser("formality", help="s-formality or the dimension rule")
    common(sp)
    sp.add_argument("--s", type=int)
    sp.add_argument("--dim", type=int, help="manifold dimension (applies the dimension rule)")
    sp.set_defaults(func=cmd_formality)

    sp = sub.add_parser("lefschetz", help="hard Lefschetz check on a finite ring")
    common(sp, cap=False)
    sp.set_defaults(func=cmd_lefschetz)

    sp = sub.add_parser("tievsky", help="cohomology of H_B (x) L(x), dx = class")
    common(sp, cap=False)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--degrees")
    sp.set_defaults(func=cmd_tievsky)

    sp = sub.add_parser("bundle", help="cohomology of an odd-sphere bundle model")
    common(sp)
    sp.add_argument("--fiber", type=int, required=True)
    sp.add_argument("--euler", required=True)
    sp.add_argument("--degrees")
    sp.set_defaults(func=cmd_bundle)

    sp = sub.add_parser("gysin", help="integral cohomology of a sphere bundle")
    common(sp, cap=False)
    sp.add_argument("--fiber", type=int, required=True)
    sp.add_argument("--euler", required=True)
    sp.add_argument("--degree", type=int)
    sp.set_defaults(func=cmd_gysin)

    sp = sub.add_parser("report", help="obstruction report for odd-dimensional manifolds")
    sp.add_argument("target", nargs="?")
    sp.add_argument("--cap", type=int)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--betti")
    sp.add_argument("--dim", type=int)
    search(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("corpus", help="list, show or check the built-in examples")
    sp.add_argument("action", choices=["list", "show", "check"])
    sp.add_argument("id", nargs="?")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_corpus)
    return p


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        _threads()
        return args.func(args)
    except (UsageError, DocumentError, ExpressionError, CapOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DGAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
