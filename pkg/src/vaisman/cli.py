"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check or
construction precondition fails, 2 on unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import fileformat as ff
from . import linalg as la
from .catalog import REGISTRY, catalog_get, verify
from .constructions import (ModificationMap, canonical_vaisman, classify_vaisman, kahler_quotient, modify,
                            quantize, validate_modification)
from .errors import (DimensionError, NotCentral, NotUnimodular, NotVaisman, ParseError, StructureError,
                     UnrecognizedShape, VaismanError)
from .lie import center, derived_algebra, is_nilpotent, is_solvable, is_unimodular, jacobi_defect
from .report import Check, StructureReport, jsonable
from .structures import check_hermitian, check_kahler_algebra, check_lck, check_sasaki

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
STRUCTURES = ("lie", "hermitian", "lck", "vaisman", "sasaki", "kahler")


class InputError(Exception):
    """User input cannot be processed (exit code 2)."""


class Outcome:
    """What a subcommand produced: exit code plus text and JSON renderings."""

    def __init__(self, code: int, text: str, payload):
        self.code, self.text, self.payload = code, text, payload


# -- helpers -----------------------------------------------------------------------

def _load(path: str, jacobi: bool = True) -> ff.AlgebraFile:
    try:
        return ff.load(path, jacobi=jacobi)
    except ParseError as exc:
        raise InputError(str(exc)) from exc


def lie_report(g) -> StructureReport:
    names = g.basis_names
    jd = jacobi_defect(g)
    checks = (Check("jacobi", "Jacobi identity on all basis triples", not jd,
                    [{"triple": [names[i], names[j], names[k]], "value": v} for i, j, k, v in jd] or None),)
    if jd:
        return StructureReport("lie", checks)
    props = (Check("unimodular", "tr ad X = 0 for all X", is_unimodular(g)),
             Check("nilpotent", "lower central series reaches 0", is_nilpotent(g)),
             Check("solvable", "derived series reaches 0", is_solvable(g)))
    data = {"center_dim": center(g).dim, "derived_dim": derived_algebra(g).dim}
    return StructureReport("lie", checks, props, data)


def _structure_report(af: ff.AlgebraFile, structure: str) -> StructureReport:
    if structure == "lie":
        return lie_report(af.algebra)
    if jacobi_defect(af.algebra):
        return lie_report(af.algebra)
    try:
        if structure == "hermitian":
            return check_hermitian(af.hermitian())
        if structure == "lck":
            return check_lck(af.hermitian())
        if structure == "vaisman":
            return check_lck(af.hermitian()).as_vaisman()
        if structure == "sasaki":
            return check_sasaki(af.sasaki())
        return check_kahler_algebra(af.kahler())
    except (ParseError, DimensionError, StructureError) as exc:
        raise InputError(str(exc)) from exc


def _check_one(path: str, structure: str):
    try:
        af = _load(path, jacobi=False)
        rep = _structure_report(af, structure)
    except InputError as exc:
        return path, EXIT_INPUT, None, str(exc)
    return path, EXIT_OK if rep.passed else EXIT_FAIL, rep, None


def _files(target: str) -> list[str]:
    p = Path(target)
    if p.is_dir():
        return sorted(str(f) for f in p.glob("*.json"))
    return [target]


# -- subcommands ---------------------------------------------------------------------

def cmd_check(args) -> Outcome:
    files = _files(args.path)
    if not files:
        raise InputError(f"no .json files in {args.path}")
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda f: _check_one(f, args.structure), files))
    results.sort(key=lambda r: r[0])
    code = max(r[1] for r in results)
    texts, payload = [], []
    for path, c, rep, err in results:
        head = f"{path}: " if len(results) > 1 else ""
        if err is not None:
            texts.append(f"{head}input error: {err}")
            payload.append({"file": path, "error": err, "exit": c})
        else:
            texts.append(head + rep.to_text())
            payload.append({"file": path, "exit": c, **rep.to_dict()})
    return Outcome(code, "\n".join(texts), payload[0] if len(payload) == 1 else payload)


def cmd_classify(args) -> Outcome:
    af = _load(args.path)
    try:
        h = af.hermitian()
        verdict = classify_vaisman(h)
    except (NotVaisman, NotUnimodular, UnrecognizedShape) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        return Outcome(EXIT_FAIL, msg, {"verdict": None, "error": type(exc).__name__, "message": str(exc)})
    except (ParseError, DimensionError, StructureError) as exc:
        raise InputError(str(exc)) from exc
    payload = {"verdict": str(verdict), "type_tag": verdict.type_tag, "k": verdict.k,
               "center_dim_ker_theta": verdict.center_dim, "killing_signature": verdict.killing_signature,
               "steps": list(verdict.steps)}
    text = str(verdict) + "".join(f"\n  step: {s}" for s in verdict.steps)
    return Outcome(EXIT_OK, text, payload)


def load_map(path: str, n: int) -> ModificationMap:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: cannot read file: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc.msg}") from exc
    try:
        if not isinstance(doc, dict):
            raise ParseError("top level must be an object", "$")
        ders = [ff._square(d, n, f"derivations[{a}]") for a, d in enumerate(doc.get("derivations", []))]
        rows = doc.get("phi")
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"expected {n} coefficient rows", "phi")
        coeffs = [ff._coords(r, len(ders), f"phi[{i}]") for i, r in enumerate(rows)]
    except ParseError as exc:
        raise InputError(f"{path}:{exc}") from exc
    return ModificationMap(tuple(ders), tuple(coeffs))


def _product(af: ff.AlgebraFile, summary: str) -> Outcome:
    return Outcome(EXIT_OK, summary + "\n" + af.algebra.describe(), ff.to_dict(af))


def cmd_modify(args) -> Outcome:
    af = _load(args.path)
    try:
        h = af.hermitian()
    except (ParseError, DimensionError) as exc:
        raise InputError(str(exc)) from exc
    m = load_map(args.map, af.dim)
    rep = validate_modification(h, m)
    if not rep.passed:
        return Outcome(EXIT_FAIL, rep.to_text(), rep.to_dict())
    out = modify(h, m, validate=False)
    return _product(ff.from_hermitian(out, f"{af.name} (modified)"), f"modified {af.name}:")


def cmd_quantize(args) -> Outcome:
    af = _load(args.path)
    try:
        k = af.kahler()
    except (ParseError, DimensionError) as exc:
        raise InputError(str(exc)) from exc
    rep = check_kahler_algebra(k)
    if not rep["v"].passed:
        return Outcome(EXIT_FAIL, rep.to_text(), rep.to_dict())
    ext = quantize(k, args.eta)
    if k.h.dim == 0:
        out = ff.from_sasaki(ext.sasaki_data(), f"quantization of {af.name}", forms={"psi": ext.psi})
    else:
        out = ff.AlgebraFile(f"quantization of {af.name}", ext.total, forms={"psi": ext.psi},
                             vectors={"eta": ext.eta})
    return _product(out, f"central extension of {af.name} by {args.eta}:")


def cmd_quotient(args) -> Outcome:
    af = _load(args.path)
    try:
        s = af.sasaki()
    except (ParseError, DimensionError) as exc:
        raise InputError(str(exc)) from exc
    rep = check_sasaki(s)
    if not rep.passed:
        return Outcome(EXIT_FAIL, rep.to_text(), rep.to_dict())
    try:
        k = kahler_quotient(s, check=False)
    except NotCentral as exc:
        return Outcome(EXIT_FAIL, f"NotCentral: {exc}", {"error": "NotCentral", "message": str(exc)})
    return _product(ff.from_kahler(k, f"quotient of {af.name}"), f"Kaehler quotient of {af.name}:")


def cmd_canonical(args) -> Outcome:
    af = _load(args.path)
    try:
        b = ff.parse_rational(args.b, "--b")
        s = af.sasaki()
    except (ParseError, DimensionError) as exc:
        raise InputError(str(exc)) from exc
    rep = check_sasaki(s)
    if not rep.passed:
        return Outcome(EXIT_FAIL, rep.to_text(), rep.to_dict())
    h = canonical_vaisman(s, b, check=False)
    out = ff.from_hermitian(h, f"canonical Vaisman on R x {af.name} (b={la.fmt(b)})",
                            forms={"theta": check_lck(h).theta})
    return _product(out, f"canonical Vaisman structure, b = {la.fmt(b)}:")


def _params(pairs) -> dict:
    out = {}
    for p in pairs or []:
        if "=" not in p:
            raise InputError(f"--param expects key=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_catalog(args) -> Outcome:
    if args.action == "list":
        rows = [{"name": k, "description": d} for k, (_, d) in REGISTRY.items()]
        return Outcome(EXIT_OK, "\n".join(f"{r['name']:<18} {r['description']}" for r in rows), rows)
    if not args.name:
        raise InputError("catalog show needs an entry name")
    try:
        e = catalog_get(args.name, **_params(args.param))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(str(exc).strip("'\"")) from exc
    af = ff.from_entry(e)
    bad = verify(e)
    lines = [e.label, e.algebra.describe(), "expected:"]
    lines += [f"  {k} = {jsonable(v)}" for k, v in e.expected.items()]
    if e.notes:
        lines.append(f"note: {e.notes}")
    if bad:
        lines += [f"  MISMATCH {k}: expected {jsonable(w)}, got {jsonable(g)}" for k, w, g in bad]
    return Outcome(EXIT_FAIL if bad else EXIT_OK, "\n".join(lines), ff.to_dict(af))


# -- entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the output to this path")

    p = argparse.ArgumentParser(prog="vaisman", parents=[common],
                                description="Exact checks and constructions for Lie algebras with "
                                            "Hermitian, l.c.K., Vaisman, Sasaki and Kaehler structures.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a structure on a file or every file in a directory")
    c.add_argument("path")
    c.add_argument("--structure", choices=STRUCTURES, default="lie")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", parents=[common], help="classify a unimodular Vaisman algebra")
    c.add_argument("path")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("modify", parents=[common], help="modify a Hermitian algebra by a derivation map")
    c.add_argument("path")
    c.add_argument("--map", required=True)
    c.set_defaults(func=cmd_modify)

    c = sub.add_parser("quantize", parents=[common], help="central extension of a Kaehler algebra")
    c.add_argument("path")
    c.add_argument("--eta", default="eta", help="name of the new central vector")
    c.set_defaults(func=cmd_quantize)

    c = sub.add_parser("quotient", parents=[common], help="Kaehler quotient of a Sasaki algebra")
    c.add_argument("path")
    c.set_defaults(func=cmd_quotient)

    c = sub.add_parser("canonical-vaisman", parents=[common], help="canonical Vaisman structure on R x g")
    c.add_argument("path")
    c.add_argument("--b", default="0")
    c.set_defaults(func=cmd_canonical)

    c = sub.add_parser("catalog", parents=[common], help="list or export built-in entries")
    c.add_argument("action", choices=("list", "show"))
    c.add_argument("name", nargs="?")
    c.add_argument("--param", action="append", metavar="KEY=VALUE")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    out_path = getattr(args, "out", None)
    try:
        outcome = args.func(args)
    except InputError as exc:
        outcome = Outcome(EXIT_INPUT, f"error: {exc}", {"error": "input", "message": str(exc)})
    except VaismanError as exc:
        outcome = Outcome(EXIT_INPUT, f"error: {type(exc).__name__}: {exc}",
                          {"error": type(exc).__name__, "message": str(exc)})
    text = json.dumps(jsonable(outcome.payload), indent=2) if fmt == "json" else outcome.text
    if out_path:
        try:
            Path(out_path).write_text(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {out_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        stream = sys.stderr if outcome.code == EXIT_INPUT and fmt == "text" else sys.stdout
        print(text, file=stream)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
