"""JSON documents for groups, homomorphisms, cochains, cocycles and triples.

Rationals travel as ``"p/q"`` strings.  Two-argument tables are objects
keyed ``"(a,b)"`` and one-argument tables are keyed ``"a"``; absent entries
mean zero and only nonzero entries are written, in element order, so output
is byte-stable.
"""

from __future__ import annotations

import itertools
import json
import re
from importlib import resources
from typing import Mapping, Optional

import jsonschema

from .arith import fmt_rational, fmt_vec, parse_rational, reduce_mod1, zvec
from .cohomology import Cochain, UnipotentModule
from .duality import DynCocycle, make_dyn
from .groups import FiniteGroup, TorusHom, group_from_document, hom_from_document
from .triples import BiCocycle, TopTriple, make_triple

_PAIR_KEY = re.compile(r"^\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$")


class DocumentError(ValueError):
    pass


def load_schema(name: str) -> dict:
    text = resources.files("tduality").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def check_schema(doc, name: str) -> None:
    try:
        jsonschema.validate(doc, load_schema(name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise DocumentError(f"{name} document invalid at '{path}': {exc.message}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=True) + "\n"


def parse_pair_key(key: str, size: int) -> tuple:
    m = _PAIR_KEY.match(key)
    if not m:
        raise DocumentError(f"bad table key {key!r}; expected '(a,b)'")
    a, b = int(m.group(1)), int(m.group(2))
    if a >= size or b >= size:
        raise DocumentError(f"table key {key!r} out of range")
    return a, b


def _parse_elem(key: str, size: int) -> int:
    try:
        a = int(key)
    except ValueError:
        raise DocumentError(f"bad element key {key!r}") from None
    if not 0 <= a < size:
        raise DocumentError(f"element {a} out of range")
    return a


def hom_to_doc(chi: TorusHom) -> dict:
    return {
        "rank": chi.rank,
        "images": {str(a): fmt_vec(chi(a)) for a in chi.group.nonidentity if any(chi(a))},
        "side": chi.side,
    }


def _q_table(src: Mapping, size: int):
    out = [[0] * size for _ in range(size)]
    for key, val in src.items():
        a, b = parse_pair_key(key, size)
        out[a][b] = reduce_mod1(parse_rational(val))
    return out


def _z_table(src: Mapping, size: int, rank: int):
    out = [[(0,) * rank for _ in range(size)] for _ in range(size)]
    for key, val in src.items():
        a, b = parse_pair_key(key, size)
        v = zvec(val)
        if len(v) != rank:
            raise DocumentError(f"lattice entry at {key} has the wrong rank")
        out[a][b] = v
    return out


def _emit_q(table, G):
    return {f"({a},{b})": fmt_rational(table[a][b]) for a in G.elements for b in G.elements if table[a][b] != 0}


def _emit_z(table, G):
    return {f"({a},{b})": list(table[a][b]) for a in G.elements for b in G.elements if any(table[a][b])}


def dyn_to_doc(d: DynCocycle, include_group: bool = True) -> dict:
    G = d.group
    doc = {"kind": "dyn-cocycle"}
    if include_group:
        doc["group"] = G.to_document()
    doc.update(
        {
            "hom": hom_to_doc(d.hom),
            "c": _emit_q(d.c, G),
            "m": _emit_z(d.m, G),
            "w": {str(a): fmt_vec(d.w[a]) for a in G.elements if any(d.w[a])},
            "side": d.side,
        }
    )
    return doc


def dyn_from_doc(doc: Mapping, G: Optional[FiniteGroup] = None) -> DynCocycle:
    check_schema(doc, "dyn-cocycle")
    if G is None:
        if "group" not in doc:
            raise DocumentError("cocycle document needs a group")
        G = group_from_document(doc["group"])
    side = doc.get("side", "torus")
    chi = hom_from_document(G, doc["hom"], side=side)
    n = chi.rank
    w = [[0] * n for _ in G.elements]
    for key, val in doc.get("w", {}).items():
        a = _parse_elem(key, G.size)
        vec = [parse_rational(x) for x in val]
        if len(vec) != n:
            raise DocumentError(f"w entry at {key} has the wrong rank")
        w[a] = vec
    return make_dyn(
        chi.with_side(side),
        _q_table(doc.get("c", {}), G.size),
        _z_table(doc.get("m", {}), G.size, n),
        w,
        side,
    )


def triple_to_doc(T: TopTriple, include_group: bool = True) -> dict:
    G = T.group
    doc = {"kind": "top-triple"}
    if include_group:
        doc["group"] = G.to_document()
    doc.update(
        {
            "order": T.order,
            "chi": hom_to_doc(T.chi),
            "chihat": hom_to_doc(T.chihat),
            "psi": {"c": _emit_q(T.c, G), "m": _emit_z(T.m, G)},
            "psihat": {"c": _emit_q(T.chat, G), "m": _emit_z(T.mhat, G)},
        }
    )
    return doc


def triple_from_doc(doc: Mapping, G: Optional[FiniteGroup] = None) -> TopTriple:
    check_schema(doc, "top-triple")
    if G is None:
        if "group" not in doc:
            raise DocumentError("triple document needs a group")
        G = group_from_document(doc["group"])
    chi = hom_from_document(G, doc["chi"], side="torus")
    chihat = hom_from_document(G, doc["chihat"], side="dual-torus")
    n = chi.rank
    psi, psihat = doc.get("psi", {}), doc.get("psihat", {})
    return make_triple(
        int(doc["order"]),
        chi,
        chihat,
        _q_table(psi.get("c", {}), G.size),
        _z_table(psi.get("m", {}), G.size, n),
        _q_table(psihat.get("c", {}), G.size),
        _z_table(psihat.get("m", {}), G.size, chihat.rank),
    )


def cochain_to_doc(f: Cochain) -> dict:
    return {
        "degree": f.degree,
        "module": {"s": f.module.s, "twist": [fmt_vec(t) for t in f.module.twist]},
        "values": {
            "const": [fmt_rational(x) for x in f.const],
            "chars": [list(v) for v in f.chars],
        },
    }


def cochain_from_doc(doc: Mapping, G: FiniteGroup) -> Cochain:
    check_schema(doc, "cochain")
    mod = doc["module"]
    s = int(mod["s"])
    twist = mod.get("twist") or [[0] * s for _ in G.elements]
    if len(twist) != G.size:
        raise DocumentError("module twist needs one vector per element")
    module = UnipotentModule(G, s, tuple(tuple(reduce_mod1(parse_rational(x)) for x in t) for t in twist))
    vals = doc["values"]
    const = tuple(reduce_mod1(parse_rational(x)) for x in vals["const"])
    chars = vals.get("chars") or [[] for _ in const]
    try:
        return Cochain(module, int(doc["degree"]), const, tuple(zvec(v) for v in chars))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def bicocycle_to_doc(b: BiCocycle) -> dict:
    G = b.group
    return {
        "kind": "bicocycle",
        "chi": hom_to_doc(b.chi),
        "chihat": hom_to_doc(b.chihat),
        "g": _emit_q(b.g, G),
        "u": _emit_z(b.u, G),
        "v": _emit_z(b.v, G),
    }


def table_to_doc(f: Cochain) -> dict:
    """Sparse ``"(a,b,..)": "p/q"`` view of a circle-valued cochain."""
    G = f.group
    out = {}
    for i, args in enumerate(itertools.product(G.elements, repeat=f.degree)):
        if f.const[i] != 0:
            out["(" + ",".join(map(str, args)) + ")"] = fmt_rational(f.const[i])
    return out
