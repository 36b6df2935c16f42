"""Structured documents (schema ``kspace-v1``) for trees, expressions and results.

``serialize`` gives the bare payload, ``to_document`` wraps it with the
schema tag and kind, and ``deserialize`` accepts either form.
"""

from __future__ import annotations

import json
from typing import Any

from .abelian import H1Result
from .errors import SchemaError
from .fpgroup import FpGroup
from .homotopy import Circle, Config2ModYoung, MonodromyDatum, Point, Product, TwistedProduct
from .knot_model import (Cable, HypKnot, HypSplice, KglDatum, Sum, Torus, Unknot, ValidationReport,
                         Violation)
from .pi1 import BraidExtension, DirectProduct, Semidirect, Trivial, ZLeaf
from .signed_perm import SignedPerm

SCHEMA = "kspace-v1"


def _kgl(k: KglDatum) -> dict:
    return {
        "name": k.name,
        "n": k.n,
        "b_order": k.b_order,
        "rho": str(k.rho_gen),
        "inversion": None if k.inversion is None else str(k.inversion),
    }


def _tree(t) -> dict:
    if isinstance(t, Unknot):
        return {"node": "unknot"}
    if isinstance(t, Torus):
        return {"node": "torus", "p": t.p, "q": t.q}
    if isinstance(t, HypKnot):
        return {"node": "hyp", "name": t.name, "invertible": t.invertible, "bit": t.orientation_bit}
    if isinstance(t, Cable):
        return {"node": "cable", "p": t.p, "q": t.q, "companion": _tree(t.companion)}
    if isinstance(t, Sum):
        return {"node": "sum", "summands": [_tree(s) for s in t.summands]}
    if isinstance(t, HypSplice):
        return {"node": "splice", "kgl": _kgl(t.kgl), "children": [_tree(c) for c in t.children],
                "inverse": t.inverted}
    raise SchemaError(f"cannot serialize {t!r}")


def _expr(e) -> dict:
    if isinstance(e, Point):
        return {"expr": "point"}
    if isinstance(e, Circle):
        return {"expr": "circle", "label": e.label}
    if isinstance(e, Product):
        return {"expr": "product", "factors": [_expr(f) for f in e.factors]}
    if isinstance(e, Config2ModYoung):
        return {"expr": "config", "n": e.n, "young": [list(b) for b in e.young],
                "factors": [_expr(f) for f in e.factors]}
    if isinstance(e, TwistedProduct):
        return {"expr": "twisted", "m": e.group_order, "monodromy": str(e.monodromy.sp),
                "fibers": [_expr(f) for f in e.fibers]}
    raise SchemaError(f"cannot serialize {e!r}")


def _group(g) -> dict:
    if isinstance(g, Trivial):
        return {"group": "trivial"}
    if isinstance(g, ZLeaf):
        return {"group": "Z"}
    if isinstance(g, DirectProduct):
        return {"group": "direct", "factors": [_group(f) for f in g.factors]}
    if isinstance(g, Semidirect):
        return {"group": "semidirect", "kernel": _group(g.kernel), "monodromy": str(g.monodromy),
                "n": g.monodromy.n, "m": g.group_order}
    if isinstance(g, BraidExtension):
        return {"group": "braid_extension", "n": g.n, "young": [list(b) for b in g.young],
                "kernel": _group(g.kernel)}
    raise SchemaError(f"cannot serialize {g!r}")


def _kind(x) -> str:
    if isinstance(x, (Unknot, Torus, HypKnot, Cable, Sum, HypSplice)):
        return "knot"
    if isinstance(x, (Point, Circle, Product, Config2ModYoung, TwistedProduct)):
        return "expr"
    if isinstance(x, H1Result):
        return "h1"
    if isinstance(x, ValidationReport):
        return "report"
    if isinstance(x, (Trivial, ZLeaf, DirectProduct, Semidirect, BraidExtension)):
        return "pi1"
    if isinstance(x, FpGroup):
        return "presentation"
    raise SchemaError(f"cannot serialize {type(x).__name__}")


def serialize(x) -> dict:
    kind = _kind(x)
    if kind == "knot":
        return _tree(x)
    if kind == "expr":
        return _expr(x)
    if kind == "h1":
        return {"rank": x.free_rank, "torsion": list(x.torsion)}
    if kind == "report":
        return {"violations": [{"path": v.path, "code": v.code, "message": v.message} for v in x.violations]}
    if kind == "pi1":
        return _group(x)
    return {"gens": list(x.gens), "relators": [list(r) for r in x.relators]}


def to_document(x) -> dict:
    return {"schema": SCHEMA, "kind": _kind(x), "value": serialize(x)}


def dumps(x: Any) -> str:
    """Canonical JSON text: sorted keys, no insignificant whitespace."""
    return json.dumps(x, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# -- reading ------------------------------------------------------------------------

def _need(d: dict, key: str, typ):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"missing field {key!r}")
    v = d[key]
    if typ is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise SchemaError(f"field {key!r} must be an integer")
    if typ is not int and not isinstance(v, typ):
        raise SchemaError(f"field {key!r} must be {typ.__name__}")
    return v


def _perm(text: str, n: int) -> SignedPerm:
    try:
        return SignedPerm.parse(text, n)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def _read_kgl(d) -> KglDatum:
    n = _need(d, "n", int)
    inv = d.get("inversion")
    if inv is not None and not isinstance(inv, str):
        raise SchemaError("field 'inversion' must be a string or null")
    return KglDatum(_need(d, "name", str), n, _need(d, "b_order", int), _perm(_need(d, "rho", str), n),
                    None if inv is None else _perm(inv, n))


def _read_tree(d):
    node = _need(d, "node", str)
    if node == "unknot":
        return Unknot()
    if node == "torus":
        return Torus(_need(d, "p", int), _need(d, "q", int))
    if node == "hyp":
        return HypKnot(_need(d, "name", str), _need(d, "invertible", bool), d.get("bit", "+"))
    if node == "cable":
        return Cable(_need(d, "p", int), _need(d, "q", int), _read_tree(_need(d, "companion", dict)))
    if node == "sum":
        return Sum(tuple(_read_tree(s) for s in _need(d, "summands", list)))
    if node == "splice":
        return HypSplice(_read_kgl(_need(d, "kgl", dict)), tuple(_read_tree(c) for c in _need(d, "children", list)),
                         bool(d.get("inverse", False)))
    raise SchemaError(f"unknown node type {node!r}")


def _read_expr(d):
    kind = _need(d, "expr", str)
    try:
        if kind == "point":
            return Point()
        if kind == "circle":
            return Circle(d.get("label", "plain"))
        if kind == "product":
            return Product(tuple(_read_expr(f) for f in _need(d, "factors", list)))
        if kind == "config":
            return Config2ModYoung(_need(d, "n", int), tuple(tuple(b) for b in _need(d, "young", list)),
                                   tuple(_read_expr(f) for f in _need(d, "factors", list)))
        if kind == "twisted":
            fibers = tuple(_read_expr(f) for f in _need(d, "fibers", list))
            mono = MonodromyDatum(_perm(_need(d, "monodromy", str), len(fibers)))
            return TwistedProduct(_need(d, "m", int), mono, fibers)
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None
    raise SchemaError(f"unknown expression type {kind!r}")


def _read_group(d):
    kind = _need(d, "group", str)
    if kind == "trivial":
        return Trivial()
    if kind == "Z":
        return ZLeaf()
    if kind == "direct":
        return DirectProduct(tuple(_read_group(f) for f in _need(d, "factors", list)))
    if kind == "semidirect":
        return Semidirect(_read_group(_need(d, "kernel", dict)),
                          _perm(_need(d, "monodromy", str), _need(d, "n", int)), _need(d, "m", int))
    if kind == "braid_extension":
        return BraidExtension(_need(d, "n", int), tuple(tuple(b) for b in _need(d, "young", list)),
                              _read_group(_need(d, "kernel", dict)))
    raise SchemaError(f"unknown group node {kind!r}")


def _read(kind: str, v):
    if kind == "knot":
        return _read_tree(v)
    if kind == "expr":
        return _read_expr(v)
    if kind == "h1":
        torsion = _need(v, "torsion", list)
        try:
            return H1Result(_need(v, "rank", int), tuple(torsion))
        except (TypeError, ValueError) as exc:
            raise SchemaError(str(exc)) from None
    if kind == "report":
        out = []
        for item in _need(v, "violations", list):
            out.append(Violation(_need(item, "path", str), _need(item, "code", str), _need(item, "message", str)))
        return ValidationReport(tuple(out))
    if kind == "pi1":
        return _read_group(v)
    if kind == "presentation":
        try:
            return FpGroup(tuple(_need(v, "gens", list)), tuple(tuple(r) for r in _need(v, "relators", list)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    raise SchemaError(f"unknown document kind {kind!r}")


def _guess_kind(d: dict) -> str:
    for key, kind in (("node", "knot"), ("expr", "expr"), ("rank", "h1"), ("violations", "report"),
                      ("group", "pi1"), ("gens", "presentation")):
        if key in d:
            return kind
    raise SchemaError("unrecognised document")


def deserialize(doc):
    """Value from a wrapped document or a bare payload (dict or JSON text)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("a document must be a JSON object")
    if "schema" in doc:
        if doc["schema"] != SCHEMA:
            raise SchemaError(f"unsupported schema {doc['schema']!r}")
        return _read(_need(doc, "kind", str), _need(doc, "value", dict))
    return _read(_guess_kind(doc), doc)
