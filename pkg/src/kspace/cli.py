"""``kspace`` command line."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import catalog
from .dsl import parse_knot, print_kgl, print_knot
from .errors import (DslSyntaxError, IndexTooLarge, InvalidTree, KspaceError, LimitExceeded, NonConcreteAction,
                     NotFiniteOrder, NotInvertible, SchemaError, SemanticError, SizeMismatch, UnknownName)
from .homology import gramain_class, gramain_cocycle, gramain_pairing, h1, h1_presentation
from .homotopy import dimension, expr_render, homotopy_type, simplify
from .knot_model import KNOT_TYPES, HypSplice, KglDatum, normalize, walk
from .pi1 import pi1_presentation, pi1_structure, render_structure
from .serialize import deserialize, dumps, serialize
from .symmetry import canonical_form, classes_equal, compute_Af, is_invertible
from .verify import verify_h1

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3, 4

PARSE_ERRORS = (DslSyntaxError, SemanticError, InvalidTree, SchemaError, UnknownName)
COMPUTE_ERRORS = (NonConcreteAction, NotInvertible, IndexTooLarge, LimitExceeded, NotFiniteOrder, SizeMismatch)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kspace", description="Homotopy types of components of the space of long knots.")
    p.add_argument("--json", action="store_true", help="structured output (accepted anywhere)")
    p.add_argument("--seedless", action="store_true", help="accepted for compatibility; output is always deterministic")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def file_cmd(name, help):
        c = sub.add_parser(name, help=help)
        c.add_argument("file", metavar="FILE", help="knot file in the DSL or a kspace-v1 document; '-' for stdin")
        return c

    file_cmd("parse", "validate and print the canonical form")
    file_cmd("type", "homotopy type").add_argument("--no-simplify", action="store_true")
    file_cmd("pi1", "fundamental group").add_argument("--presentation", action="store_true")
    file_cmd("h1", "first homology").add_argument("--verify", action="store_true",
                                                   help="cross-check against the brute-force oracle")
    file_cmd("gramain", "Gramain pairing")
    file_cmd("invertible", "whether the knot is isotopic to its inverse")
    file_cmd("af", "A_f at every splice vertex")
    file_cmd("dim", "dimension of the flat-manifold model")
    eq = sub.add_parser("eq", help="whether two files describe the same knot")
    eq.add_argument("file1", metavar="FILE1")
    eq.add_argument("file2", metavar="FILE2")
    cat = sub.add_parser("catalog", help="built-in KGLs and knots")
    cat.add_argument("name", metavar="NAME", nargs="?")
    return p


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"kspace: cannot read {path}: {exc.strerror}") from None


def load_knot(text: str):
    """Tree from DSL text or a kspace-v1 JSON document, normalized and validated."""
    if text.lstrip().startswith("{"):
        value = deserialize(text)
        if not isinstance(value, KNOT_TYPES):
            raise SchemaError("document does not describe a knot")
        return normalize(value)
    return parse_knot(text)


def _emit(args, payload, text: str):
    print(dumps(payload) if args.json else text)


def _cmd_parse(args, tree):
    c = canonical_form(tree)
    _emit(args, serialize(c), print_knot(c))


def _cmd_type(args, tree):
    e = homotopy_type(tree)
    if not args.no_simplify:
        e = simplify(e)
    _emit(args, serialize(e), expr_render(e))


def _cmd_pi1(args, tree):
    if args.presentation:
        g = pi1_presentation(tree)
        _emit(args, serialize(g), str(g))
    else:
        s = pi1_structure(simplify(homotopy_type(tree)))
        payload = serialize(s)
        payload["text"] = render_structure(s)
        _emit(args, payload, render_structure(s))


def _cmd_h1(args, tree):
    result = h1(tree)
    payload = serialize(result)
    text = str(result)
    code = EXIT_OK
    if args.verify:
        report = verify_h1(h1_presentation(tree), result)
        payload["verify"] = report.as_dict()
        if report.ok:
            text += f"\nverify: ok ({report.checked} matrices, 0 mismatches)"
        else:
            text += f"\nverify: FAILED ({len(report.mismatches)} of {report.checked})"
            for m in report.mismatches:
                print(f"kspace: {m}", file=sys.stderr)
            code = EXIT_VERIFY
    _emit(args, payload, text)
    return code


def _cmd_gramain(args, tree):
    n = gramain_pairing(tree)
    payload = {"pairing": n, "class": list(gramain_class(tree)), "cocycle": list(gramain_cocycle(tree))}
    _emit(args, payload, str(n))


def _cmd_invertible(args, tree):
    v = is_invertible(tree)
    _emit(args, {"invertible": v}, "true" if v else "false")


def _cmd_af(args, tree):
    rows = []
    for path, node in walk(tree):
        if isinstance(node, HypSplice):
            af = compute_Af(node.kgl, node.children)
            rows.append({"path": path, "kgl": node.kgl.name, "order": af.order, "b_order": node.kgl.b_order,
                         "generator": str(af.generator_image)})
    lines = [f"{r['path']}: {r['kgl']} A_f=Z{r['order']} in B_L=Z{r['b_order']}, generator acts by {r['generator']}"
             for r in rows]
    _emit(args, {"vertices": rows}, "\n".join(lines) if lines else "no splice vertices")


def _cmd_dim(args, tree):
    d = dimension(simplify(homotopy_type(tree)))
    _emit(args, {"dimension": d}, "none" if d is None else str(d))


def _cmd_eq(args):
    a = load_knot(_read_source(args.file1))
    b = load_knot(_read_source(args.file2))
    v = classes_equal(a, b)
    _emit(args, {"equal": v}, "equal" if v else "not equal")


def _cmd_catalog(args):
    if args.name is None:
        names = catalog.catalog_names()
        _emit(args, {"names": names}, "\n".join(names))
        return
    item = catalog.catalog_get(args.name)
    if isinstance(item, KglDatum):
        payload = serialize(HypSplice(item, ()))["kgl"]
        inv = "none" if item.inversion is None else str(item.inversion)
        text = f"{print_kgl(item)}: n={item.n} B={item.b_order} rho={item.rho_gen} inv={inv}"
    else:
        payload = serialize(item)
        text = print_knot(item)
    _emit(args, payload, text)


COMMANDS = {
    "parse": _cmd_parse, "type": _cmd_type, "pi1": _cmd_pi1, "h1": _cmd_h1, "gramain": _cmd_gramain,
    "invertible": _cmd_invertible, "af": _cmd_af, "dim": _cmd_dim,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    # output never depends on a seed, so --seedless is accepted and ignored
    argv = [a for a in argv if a not in ("--json", "--seedless")]
    try:
        args = _build_parser().parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    args.json = as_json
    try:
        if args.command == "eq":
            return _cmd_eq(args) or EXIT_OK
        if args.command == "catalog":
            return _cmd_catalog(args) or EXIT_OK
        tree = load_knot(_read_source(args.file))
        return COMMANDS[args.command](args, tree) or EXIT_OK
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except PARSE_ERRORS as exc:
        print(f"kspace: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except COMPUTE_ERRORS as exc:
        print(f"kspace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except KspaceError as exc:
        print(f"kspace: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
