"""JSON algebra-description files.

A document holds one Lie algebra plus optional structure data.  Every
rational is a string ``"p"`` or ``"p/q"``; matrices are flat row-major
arrays.  Errors carry the JSON path of the offending field.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import linalg as la
from .errors import DivisionByZero, ParseError, VaismanError
from .forms import KForm
from .lie import LieAlgebra, Subspace
from .structures import HermitianData, KahlerAlgebraData, SasakiData

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


@dataclass(frozen=True)
class AlgebraFile:
    """Parsed contents of an algebra-description document."""

    name: str
    algebra: LieAlgebra
    metric: la.Matrix | None = None
    complex_structure: la.Matrix | None = None
    forms: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    subalgebra: Subspace | None = None
    parameters: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def _need(self, what: str, value):
        if value is None:
            raise ParseError(f"this structure needs the field {what!r}", what)
        return value

    def hermitian(self) -> HermitianData:
        return HermitianData(self.algebra, self._need("metric", self.metric),
                             self._need("complex_structure", self.complex_structure))

    def sasaki(self) -> SasakiData:
        return SasakiData(self.algebra, self._need("forms.phi", self.forms.get("phi")),
                          self._need("vectors.eta", self.vectors.get("eta")),
                          self._need("complex_structure", self.complex_structure),
                          self._need("metric", self.metric))

    def kahler(self) -> KahlerAlgebraData:
        return KahlerAlgebraData(self.algebra, self.subalgebra or Subspace.zero(self.dim),
                                 self._need("complex_structure", self.complex_structure),
                                 self._need("forms.omega", self.forms.get("omega")))


# -- parsing ---------------------------------------------------------------------

def parse_rational(text: Any, path: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"expected a rational string like \"p/q\", got {text!r}", path)
    m = _RATIONAL.match(str(text))
    if not m:
        raise ParseError(f"malformed rational {text!r}", path)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise DivisionByZero(f"zero denominator in {text!r}", path)
    return Fraction(num, den)


def _get(obj: dict, key: str, path: str, kind, required=True):
    if key not in obj:
        if required:
            raise ParseError(f"missing field {key!r}", path)
        return None
    v = obj[key]
    if not isinstance(v, kind) or isinstance(v, bool) and kind is not bool:
        raise ParseError(f"field {key!r} has the wrong type ({type(v).__name__})", f"{path}.{key}".lstrip("."))
    return v


def _index(v: Any, n: int, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer index, got {v!r}", path)
    if not 0 <= v < n:
        raise ParseError(f"index {v} out of range 0..{n - 1}", path)
    return v


def _square(data: Any, n: int, path: str) -> la.Matrix:
    if not isinstance(data, list):
        raise ParseError("expected an array", path)
    if len(data) == n and all(isinstance(r, list) for r in data) and n:
        flat, nested = [x for r in data for x in r], True
        if any(len(r) != n for r in data):
            raise ParseError(f"expected {n} rows of length {n}", path)
    else:
        flat, nested = data, False
    if len(flat) != n * n:
        raise ParseError(f"expected {n * n} entries (row-major {n}x{n}), got {len(flat)}", path)
    vals = []
    for k, x in enumerate(flat):
        p = f"{path}[{k // n}][{k % n}]" if nested else f"{path}[{k}]"
        vals.append(parse_rational(x, p))
    return tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n))


def _coords(data: Any, n: int, path: str) -> tuple:
    if not isinstance(data, list) or len(data) != n:
        raise ParseError(f"expected an array of {n} rationals", path)
    return tuple(parse_rational(x, f"{path}[{k}]") for k, x in enumerate(data))


def from_dict(doc: Any, *, jacobi: bool = True) -> AlgebraFile:
    """Parse a decoded document; ``jacobi=False`` defers the Jacobi check to the caller."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object", "$")
    name = _get(doc, "name", "", str)
    basis = _get(doc, "basis", "", list)
    if any(not isinstance(s, str) or not s for s in basis):
        raise ParseError("basis names must be nonempty strings", "basis")
    if len(set(basis)) != len(basis):
        dup = next(s for s in basis if basis.count(s) > 1)
        raise ParseError(f"duplicate basis name {dup!r}", "basis")
    n = len(basis)
    dim = doc.get("dim", n)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim != n:
        raise ParseError(f"dim = {dim!r} does not match the {n} basis names", "dim")

    table: dict[tuple[int, int], list] = {}
    for b, entry in enumerate(_get(doc, "brackets", "", list, required=False) or []):
        p = f"brackets[{b}]"
        if not isinstance(entry, dict):
            raise ParseError("bracket entries must be objects", p)
        i = _index(entry.get("i"), n, f"{p}.i")
        j = _index(entry.get("j"), n, f"{p}.j")
        if i >= j:
            raise ParseError(f"bracket entries need i < j (got i={i}, j={j})", p)
        if (i, j) in table:
            raise ParseError(f"duplicate bracket [{basis[i]}, {basis[j]}]", p)
        row = [Fraction(0)] * n
        for t, term in enumerate(_get(entry, "terms", p, list)):
            tp = f"{p}.terms[{t}]"
            if not isinstance(term, dict):
                raise ParseError("terms must be objects {k, coeff}", tp)
            k = _index(term.get("k"), n, f"{tp}.k")
            row[k] += parse_rational(term.get("coeff"), f"{tp}.coeff")
        table[(i, j)] = row
    try:
        algebra = LieAlgebra(basis, table, check=jacobi)
    except VaismanError as exc:
        raise ParseError(str(exc), "brackets") from exc

    metric = _square(doc["metric"], n, "metric") if doc.get("metric") is not None else None
    cs = (_square(doc["complex_structure"], n, "complex_structure")
          if doc.get("complex_structure") is not None else None)

    forms = {}
    for f, entry in enumerate(_get(doc, "forms", "", list, required=False) or []):
        p = f"forms[{f}]"
        if not isinstance(entry, dict):
            raise ParseError("form entries must be objects", p)
        fname = _get(entry, "name", p, str)
        deg = _get(entry, "degree", p, int)
        if not 0 <= deg <= n:
            raise ParseError(f"degree {deg} out of range 0..{n}", f"{p}.degree")
        coeffs: dict = {}
        for t, term in enumerate(_get(entry, "terms", p, list)):
            tp = f"{p}.terms[{t}]"
            idx = _get(term, "indices", tp, list) if isinstance(term, dict) else None
            if idx is None:
                raise ParseError("terms must be objects {indices, coeff}", tp)
            idx = tuple(_index(x, n, f"{tp}.indices[{q}]") for q, x in enumerate(idx))
            if len(idx) != deg:
                raise ParseError(f"{len(idx)} indices in a {deg}-form", f"{tp}.indices")
            key = tuple(sorted(idx))
            sign = KForm(deg, n, {idx: 1}).coefficient(key) if len(set(idx)) == len(idx) else 0
            if sign:
                coeffs[key] = coeffs.get(key, Fraction(0)) + sign * parse_rational(term.get("coeff"), f"{tp}.coeff")
        if fname in forms:
            raise ParseError(f"duplicate form name {fname!r}", f"{p}.name")
        forms[fname] = KForm(deg, n, coeffs)

    vectors = {}
    for v, entry in enumerate(_get(doc, "vectors", "", list, required=False) or []):
        p = f"vectors[{v}]"
        if not isinstance(entry, dict):
            raise ParseError("vector entries must be objects", p)
        vname = _get(entry, "name", p, str)
        if vname in vectors:
            raise ParseError(f"duplicate vector name {vname!r}", f"{p}.name")
        vectors[vname] = _coords(entry.get("coords"), n, f"{p}.coords")

    sub = None
    if doc.get("subalgebra") is not None:
        raw = _get(doc, "subalgebra", "", list)
        sub = Subspace([_coords(x, n, f"subalgebra[{k}]") for k, x in enumerate(raw)], n)

    params = {}
    for k, v in (_get(doc, "parameters", "", dict, required=False) or {}).items():
        params[k] = parse_rational(v, f"parameters.{k}") if _RATIONAL.match(str(v)) else str(v)
    return AlgebraFile(name, algebra, metric, cs, forms, vectors, sub, params)


def loads(text: str, *, jacobi: bool = True) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", "$") from exc
    return from_dict(doc, jacobi=jacobi)


def load(path, *, jacobi: bool = True) -> AlgebraFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc
    try:
        return loads(text, jacobi=jacobi)
    except ParseError as exc:
        raise type(exc)(exc.detail, f"{path}:{exc.path}") from exc


# -- serialization -----------------------------------------------------------------

def _flat(m: la.Matrix) -> list[str]:
    return [la.fmt(x) for r in m for x in r]


def to_dict(af: AlgebraFile) -> dict:
    g = af.algebra
    doc: dict = {"name": af.name, "dim": g.dim, "basis": list(g.basis_names)}
    doc["brackets"] = [{"i": i, "j": j, "terms": [{"k": k, "coeff": la.fmt(x)} for k, x in enumerate(c) if x]}
                       for (i, j), c in g.brackets.items()]
    if af.metric is not None:
        doc["metric"] = _flat(af.metric)
    if af.complex_structure is not None:
        doc["complex_structure"] = _flat(af.complex_structure)
    if af.forms:
        doc["forms"] = [{"name": k, "degree": f.degree,
                         "terms": [{"indices": list(idx), "coeff": la.fmt(c)} for idx, c in f.terms()]}
                        for k, f in af.forms.items()]
    if af.vectors:
        doc["vectors"] = [{"name": k, "coords": [la.fmt(x) for x in v]} for k, v in af.vectors.items()]
    if af.subalgebra is not None:
        doc["subalgebra"] = [[la.fmt(x) for x in v] for v in af.subalgebra.basis]
    if af.parameters:
        doc["parameters"] = {k: la.fmt(v) if isinstance(v, Fraction) else str(v) for k, v in af.parameters.items()}
    return doc


def dumps(af: AlgebraFile) -> str:
    return json.dumps(to_dict(af), indent=2) + "\n"


def save(af: AlgebraFile, path) -> None:
    Path(path).write_text(dumps(af))


def canonical(text_or_doc) -> str:
    """Canonical text of a document: parsed, then re-serialized with sorted keys."""
    af = loads(text_or_doc) if isinstance(text_or_doc, str) else from_dict(text_or_doc)
    return json.dumps(to_dict(af), sort_keys=True, separators=(",", ":"))


# -- conversions ---------------------------------------------------------------------

def from_hermitian(h: HermitianData, name: str, **extra) -> AlgebraFile:
    return AlgebraFile(name, h.algebra, h.metric, h.J, **extra)


def from_sasaki(s: SasakiData, name: str, **extra) -> AlgebraFile:
    forms = {"phi": s.phi, **extra.pop("forms", {})}
    vectors = {"eta": s.eta, **extra.pop("vectors", {})}
    return AlgebraFile(name, s.algebra, s.metric, s.Jtilde, forms, vectors, **extra)


def from_kahler(k: KahlerAlgebraData, name: str, metric=None, **extra) -> AlgebraFile:
    forms = {"omega": k.omega, **extra.pop("forms", {})}
    sub = k.h if k.h.dim else None
    return AlgebraFile(name, k.algebra, metric, k.J, forms, subalgebra=sub, **extra)


def from_entry(entry) -> AlgebraFile:
    """Export a catalog entry; the richest attached structure decides the fields."""
    params = dict(entry.parameters)
    vectors = dict(entry.vectors)
    if entry.kahler is not None:
        metric = entry.hermitian.metric if entry.hermitian is not None else None
        return from_kahler(entry.kahler, entry.label, metric=metric, vectors=vectors, parameters=params)
    if entry.sasaki is not None:
        vectors.pop("eta", None)
        return from_sasaki(entry.sasaki, entry.label, vectors=vectors, parameters=params)
    if entry.hermitian is not None:
        return from_hermitian(entry.hermitian, entry.label, vectors=vectors, parameters=params)
    return AlgebraFile(entry.label, entry.algebra, vectors=vectors, subalgebra=entry.subalgebra,
                       parameters=params)
