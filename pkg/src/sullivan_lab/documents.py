"""Algebra description documents and the built-in corpus.

A document is a JSON object with a ``version`` field and a ``kind``:

* ``free_dga``: ``generators`` ([name, degree] pairs), ``differential``
  (name -> expression), ``cap``;
* ``finite_ring`` / ``integral_ring``: ``basis`` ([name, degree] pairs),
  ``products`` ("x*y" -> expression), optional ``omega`` and ``n``.

Canonical serialization uses sorted keys and re-printed expressions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .dga import attach_differential
from .expr import ExpressionError
from .gca import AlgebraError, Element, make_free_gca
from .geomodels import FiniteGradedRing
from .gysin import IntegralGradedRing
from .rings import TableRing, parse_product_table

VERSION = 1
KINDS = ("free_dga", "finite_ring", "integral_ring")


class DocumentError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line, self.column = line, column


@dataclass
class AlgebraDocument:
    kind: str
    generators: List[Tuple[str, int]]
    relations: Dict[str, str]  # differential (free_dga) or products (rings)
    cap: Optional[int] = None
    omega: Optional[str] = None
    n: Optional[int] = None
    name: Optional[str] = None
    version: int = VERSION
    _object: object = field(default=None, repr=False, compare=False)

    def build(self):
        """The core object described (cached)."""
        if self._object is None:
            self._object = _build(self)
        return self._object

    def to_dict(self) -> Dict[str, object]:
        obj = self.build()
        out: Dict[str, object] = {"version": self.version, "kind": self.kind}
        if self.name:
            out["name"] = self.name
        if self.kind == "free_dga":
            out["generators"] = [[g, d] for g, d in self.generators]
            out["differential"] = {g: str(img) for g, img in obj.diff.items() if img}
            out["cap"] = self.cap
        else:
            out["basis"] = [[g, d] for g, d in self.generators]
            prods = {}
            for (x, y), vec in obj.structure_constants().items():
                prods[f"{x}*{y}"] = str(Element(obj, vec))
            out["products"] = prods
            if self.omega is not None:
                out["omega"] = str(obj.omega) if getattr(obj, "omega", None) is not None else self.omega
            if self.n is not None:
                out["n"] = self.n
        return out


def serialize(doc: AlgebraDocument) -> str:
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2) + "\n"


def _line_of(text: str, needle: str) -> Optional[int]:
    for i, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return i
    return None


def _pairs(raw, what: str, text: str) -> List[Tuple[str, int]]:
    if not isinstance(raw, list) or not raw:
        raise DocumentError(f"'{what}' must be a nonempty list of [name, degree] pairs")
    out = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], str)
                and isinstance(item[1], int) and not isinstance(item[1], bool)):
            raise DocumentError(f"bad entry {item!r} in '{what}'", _line_of(text, json.dumps(item)[:8]))
        out.append((item[0], item[1]))
    return out


def parse_algebra_document(data: Union[str, Dict], text: Optional[str] = None) -> AlgebraDocument:
    if isinstance(data, str):
        text = data
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    text = text or ""
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    if "document" in data and isinstance(data["document"], dict):
        data = data["document"]
    version = data.get("version")
    if version != VERSION:
        raise DocumentError(f"unsupported or missing version {version!r} (expected {VERSION})")
    kind = data.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}")
    if kind == "free_dga":
        gens = _pairs(data.get("generators"), "generators", text)
        rel = data.get("differential", {})
        cap = data.get("cap")
        if not isinstance(cap, int):
            raise DocumentError("free_dga documents need an integer 'cap'")
    else:
        gens = _pairs(data.get("basis"), "basis", text)
        rel = data.get("products", {})
        cap = None
    if not isinstance(rel, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in rel.items()):
        raise DocumentError("relations must map strings to expression strings")
    doc = AlgebraDocument(kind, gens, dict(rel), cap, data.get("omega"), data.get("n"), data.get("name"))
    try:
        doc.build()
    except _FieldError as exc:
        raise DocumentError(f"{exc.where}: {exc.error.msg}", _line_of(text, f'"{exc.key}":'),
                            exc.error.column) from None
    except AlgebraError as exc:
        raise DocumentError(str(exc)) from None
    return doc


class _FieldError(Exception):
    def __init__(self, key: str, where: str, error: ExpressionError):
        super().__init__(key)
        self.key, self.where, self.error = key, where, error


def _build(doc: AlgebraDocument):
    if doc.kind == "free_dga":
        A = make_free_gca(doc.generators, doc.cap)
        diff = {}
        for name, expr in doc.relations.items():
            if name not in A.names:
                raise AlgebraError(f"differential given for undeclared generator {name!r}")
            try:
                diff[name] = A.element(expr)
            except ExpressionError as exc:
                raise _FieldError(name, f"differential of {name!r}", exc) from None
        return attach_differential(A, diff)
    scratch = TableRing(doc.generators, {})
    for key, expr in doc.relations.items():
        try:
            scratch.element(expr)
        except ExpressionError as exc:
            raise _FieldError(key, f"product {key!r}", exc) from None
    products = parse_product_table(doc.generators, doc.relations)
    if doc.kind == "integral_ring":
        return IntegralGradedRing(doc.generators, products)
    return FiniteGradedRing(doc.generators, products, doc.omega, doc.n)


def parse_algebra_file(source: Union[str, Path]) -> AlgebraDocument:
    """Parse a document from a path, a ``corpus:<id>`` reference or raw JSON text."""
    s = str(source)
    if s.startswith("corpus:"):
        return corpus_entry(s.split(":", 1)[1]).document
    if s.lstrip().startswith("{"):
        return parse_algebra_document(s)
    path = Path(s)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {s}: {exc.strerror}") from None
    return parse_algebra_document(text)


# ---------------------------------------------------------------- corpus

PROVENANCE = ("published", "derived", "trivial")


@dataclass
class CorpusEntry:
    id: str
    description: str
    document: AlgebraDocument
    expected: List[Dict[str, object]]


def corpus_ids() -> List[str]:
    root = resources.files("sullivan_lab") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_entry(cid: str) -> CorpusEntry:
    root = resources.files("sullivan_lab") / "corpus"
    f = root / f"{cid}.json"
    if not f.is_file():
        raise DocumentError(f"unknown corpus entry {cid!r}; known: {', '.join(corpus_ids())}")
    text = f.read_text(encoding="utf-8")
    raw = json.loads(text)
    doc = parse_algebra_document(raw["document"], text)
    doc.name = doc.name or cid
    expected = raw.get("expected", [])
    for item in expected:
        if item.get("provenance") not in PROVENANCE:
            raise DocumentError(f"corpus entry {cid}: expectation {item.get('check')} lacks provenance")
    return CorpusEntry(cid, raw.get("description", ""), doc, expected)
