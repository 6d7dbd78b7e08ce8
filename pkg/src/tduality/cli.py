"""Command-line front end.

Every subcommand reads one JSON document (a file path, or ``-`` for standard
input) and writes one JSON result document to standard output.  Exit codes:
0 success, 2 invalid input, 3 internal invariant breach, 64 unknown command.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Dict, Optional

from . import __version__
from .arith import fmt_rational, parse_rational
from .cohomology import cohomology_group, schur_multiplier, solve_coboundary
from .documents import (
    DocumentError,
    bicocycle_to_doc,
    check_schema,
    cochain_to_doc,
    dumps,
    dyn_from_doc,
    dyn_to_doc,
    table_to_doc,
    triple_from_doc,
    triple_to_doc,
)
from .duality import dualize, is_cohomologous_dyn, validate_dyn
from .errors import InvariantBreach
from .groups import FiniteGroup, bockstein, group_from_document, hom_from_document
from .selftest import run_selftest
from .triples import (
    beta_eval,
    cup3,
    cup_class_order,
    dyn_to_triple,
    exists_triple,
    is_strict,
    lhat_star,
    order_change,
    sqcup,
    strictify,
    triple_to_dyn,
    validate_triple,
)

EXIT_OK, EXIT_INVALID, EXIT_BREACH, EXIT_UNKNOWN = 0, 2, 3, 64


def _read_doc(path: Optional[str]):
    if path is None:
        raise DocumentError("an input document is required")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"input is not valid JSON: {exc}") from None
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None


def _manifest(args) -> dict:
    if args.input is None and getattr(args, "orders", None):
        doc = {}
    else:
        doc = _read_doc(args.input)
    if not isinstance(doc, dict):
        raise DocumentError("top-level document must be an object")
    if getattr(args, "orders", None):
        doc = dict(doc, group={"kind": "product_cyclic", "orders": [int(x) for x in args.orders.split(",")]})
    return doc


def _group(doc: dict) -> FiniteGroup:
    if "group" not in doc:
        raise DocumentError("document needs a 'group'")
    check_schema(doc["group"], "group")
    return group_from_document(doc["group"])


def _homs(doc: dict, G: FiniteGroup):
    for key in ("chi", "chihat"):
        if key not in doc:
            raise DocumentError(f"document needs '{key}'")
        check_schema(doc[key], "hom")
    chi = hom_from_document(G, doc["chi"], side="torus")
    chihat = hom_from_document(G, doc["chihat"], side="dual-torus")
    return chi, chihat


def cmd_schur(args):
    doc = _manifest(args)
    G = _group(doc)
    H = schur_multiplier(G)
    return doc, {"invariant_factors": list(H.invariant_factors), "order": H.order, "display": str(H)}


def cmd_cohomology(args):
    doc = _manifest(args)
    G = _group(doc)
    k = int(args.degree if args.degree is not None else doc.get("degree", 2))
    H = cohomology_group(G, k)
    return doc, {"degree": k, "invariant_factors": list(H.invariant_factors), "order": H.order, "display": str(H)}


def cmd_bockstein(args):
    doc = _manifest(args)
    G = _group(doc)
    check_schema(doc.get("chi", {}), "hom")
    chi = hom_from_document(G, doc["chi"])
    eta = bockstein(chi)
    table = {f"({a},{b})": list(eta[a][b]) for a in G.elements for b in G.elements if any(eta[a][b])}
    return doc, {"eta": table}


def cmd_cup(args):
    doc = _manifest(args)
    G = _group(doc)
    chi, chihat = _homs(doc, G)
    z = cup3(chi, chihat)
    w = solve_coboundary(z)
    result = {
        "cocycle": table_to_doc(z),
        "class": "trivial" if w is not None else "nontrivial",
        "class_order": cup_class_order(chi, chihat),
        "witness": table_to_doc(w) if w is not None else None,
    }
    return doc, result


def cmd_sqcup(args):
    doc = _manifest(args)
    G = _group(doc)
    chi, chihat = _homs(doc, G)
    b = sqcup(chi, chihat)
    out = bicocycle_to_doc(b)
    out["is_cocycle"] = b.is_cocycle()
    return doc, out


def cmd_beta(args):
    doc = _manifest(args)
    G = _group(doc)
    chi, chihat = _homs(doc, G)
    a = int(doc.get("element", 0))
    if not 0 <= a < G.size:
        raise DocumentError(f"element {a} out of range")
    z = [parse_rational(x) for x in doc.get("z", [0] * chi.rank)]
    zh = [parse_rational(x) for x in doc.get("zhat", [0] * chi.rank)]
    return doc, {"value": fmt_rational(beta_eval(chi, chihat, a, z, zh))}


def _dyn(doc: dict, G: Optional[FiniteGroup] = None):
    d = dyn_from_doc(doc, G)
    v = validate_dyn(d)
    if not v:
        raise DocumentError(f"cocycle is invalid: condition {v.condition} fails at {list(v.where or ())}: {v.detail}")
    return d


def cmd_dualize(args):
    doc = _read_doc(args.input)
    d = _dyn(doc)
    return doc, dyn_to_doc(dualize(d))


def cmd_is_cohomologous(args):
    doc = _read_doc(args.input)
    if "first" not in doc or "second" not in doc:
        raise DocumentError("document needs 'first' and 'second' cocycles")
    G = _group(doc) if "group" in doc else None
    d1 = _dyn(doc["first"], G)
    d2 = _dyn(doc["second"], G if G is not None else d1.group)
    w = is_cohomologous_dyn(d1, d2)
    if w is None:
        return doc, {"cohomologous": False, "witness": None}
    E = d1.group.elements
    return doc, {
        "cohomologous": True,
        "witness": {
            "k": {str(a): fmt_rational(w.k[a]) for a in E if w.k[a] != 0},
            "t": {str(a): list(w.t[a]) for a in E if any(w.t[a])},
        },
    }


def cmd_triple_exists(args):
    doc = _manifest(args)
    G = _group(doc)
    chi, chihat = _homs(doc, G)
    L = int(args.order if args.order is not None else doc.get("order", 1))
    T = exists_triple(chi, chihat, L)
    return doc, {"exists": T is not None, "order": L, "triple": triple_to_doc(T) if T is not None else None}


def _report(T) -> dict:
    r = validate_triple(T)
    out = {"valid": r.ok}
    if r.ok:
        out["strict"] = is_strict(T)
        out["witness"] = cochain_to_doc(r.witness)
    else:
        out["condition"] = r.condition
        out["where"] = list(r.where) if r.where else None
        out["detail"] = r.detail
    return out


def cmd_triple_validate(args):
    doc = _read_doc(args.input)
    return doc, _report(triple_from_doc(doc))


def cmd_validate(args):
    doc = _read_doc(args.input)
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "dyn-cocycle" or (kind is None and "hom" in doc):
        return doc, {"kind": "dyn-cocycle", **validate_dyn(dyn_from_doc(doc)).to_dict()}
    return doc, {"kind": "top-triple", **_report(triple_from_doc(doc))}


def _strict(T):
    return (T, False) if is_strict(T) else (strictify(T), True)


def cmd_order_change(args):
    doc = _read_doc(args.input)
    G = _group(doc) if "group" in doc else None
    if "triple" not in doc:
        raise DocumentError("document needs a 'triple'")
    T = triple_from_doc(doc["triple"], G)
    chi, chihat = _homs(doc, T.group)
    K = int(doc.get("K", 1))
    L = int(doc.get("L", 1))
    return doc, {"triple": triple_to_doc(order_change(K, L, T, chi, chihat))}


def cmd_lhat_star(args):
    doc = _read_doc(args.input)
    T, changed = _strict(triple_from_doc(doc))
    return doc, {"strictified": changed, "triple": triple_to_doc(lhat_star(T))}


def cmd_dyn_to_triple(args):
    doc = _read_doc(args.input)
    return doc, {"triple": triple_to_doc(dyn_to_triple(_dyn(doc)))}


def cmd_triple_to_dyn(args):
    doc = _read_doc(args.input)
    T, changed = _strict(triple_from_doc(doc))
    return doc, {"strictified": changed, "cocycle": dyn_to_doc(triple_to_dyn(T))}


def cmd_selftest(args):
    report = run_selftest(seed=args.seed, samples=args.samples, jobs=args.jobs)
    return {"seed": args.seed, "samples": args.samples, "jobs": args.jobs}, report


COMMANDS: Dict[str, Callable] = {
    "schur": cmd_schur,
    "cohomology": cmd_cohomology,
    "bockstein": cmd_bockstein,
    "cup": cmd_cup,
    "sqcup": cmd_sqcup,
    "beta": cmd_beta,
    "dualize": cmd_dualize,
    "is-cohomologous": cmd_is_cohomologous,
    "triple-exists": cmd_triple_exists,
    "triple-validate": cmd_triple_validate,
    "validate": cmd_validate,
    "order-change": cmd_order_change,
    "lhat-star": cmd_lhat_star,
    "dyn-to-triple": cmd_dyn_to_triple,
    "triple-to-dyn": cmd_triple_to_dyn,
    "selftest": cmd_selftest,
}

_GROUP_ONLY = {"schur", "cohomology", "bockstein", "cup", "sqcup", "beta", "triple-exists"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tduality", description="Exact cocycle calculus for torus duality over finite groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte stability)")
        sp.add_argument("-o", "--output", help="write the result here instead of standard output")
        if name == "selftest":
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--samples", type=int, default=20)
            sp.add_argument("--jobs", type=int, default=1)
            continue
        sp.add_argument("input", nargs="?", help="JSON document, or - for standard input")
        if name in _GROUP_ONLY:
            sp.add_argument("--orders", help="shorthand for a product of cyclic groups, e.g. 2,2")
        if name == "cohomology":
            sp.add_argument("--degree", type=int)
        if name == "triple-exists":
            sp.add_argument("--order", type=int)
    return p


def _emit(doc: dict, output: Optional[str]) -> None:
    text = dumps(doc)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    first = next((a for a in argv if not a.startswith("-")), None)
    if first is not None and first not in COMMANDS:
        sys.stderr.write(f"tduality: unknown command {first!r}\n")
        return EXIT_UNKNOWN
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    start = time.perf_counter()
    try:
        echo, result = COMMANDS[args.command](args)
    except InvariantBreach as exc:
        sys.stderr.write(f"tduality: internal invariant breach: {exc}\n")
        _emit({"tool": "tduality", "version": __version__, "command": args.command, "error": "invariant-breach", "detail": str(exc)}, None)
        return EXIT_BREACH
    except (ValueError, KeyError, TypeError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        sys.stderr.write(f"tduality: invalid input: {msg}\n")
        _emit({"tool": "tduality", "version": __version__, "command": args.command, "error": "invalid-input", "detail": msg}, None)
        return EXIT_INVALID
    out = {"tool": "tduality", "version": __version__, "command": args.command, "input": echo, "result": result}
    if args.timing:
        out["timing_seconds"] = round(time.perf_counter() - start, 6)
    _emit(out, args.output)
    if args.command == "selftest" and not result["passed"]:
        return EXIT_BREACH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
