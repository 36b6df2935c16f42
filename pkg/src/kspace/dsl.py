"""Text syntax for companionship trees.

::

    knot    := "unknot" | "torus(" int "," int ")"
             | "hyp(" name ";" "invertible=" bool [";" "bit=" ("+"|"-")] ")"
             | "cable(" int "," int ";" knot ")" | "sum(" knot {"," knot} ")"
             | "splice(" kglref ";" knot {"," knot} [";" "inverse"] ")"
             | catalog knot name
    kglref  := name | family "(" int ")"
             | "kgl(" name ";" "n=" int ";" "B=" int ";" "rho=" cycles [";" "inv=" cycles] ")"
    cycles  := "(" {int} ["+"|"-"] ")" {cycles}

Whitespace is free between tokens and ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import KNOTS, catalog_get
from .errors import DslSyntaxError, SemanticError, UnknownName
from .knot_model import (Cable, HypKnot, HypSplice, KglDatum, KnotTree, Sum, Torus, Unknot, Violation,
                         _normalize, validate)
from .signed_perm import SignedPerm

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),;=+\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _line_col(src: str, pos: int) -> tuple[int, int]:
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = self._lex(src)
        self.i = 0

    def _error(self, message, pos, expected=None):
        line, col = _line_col(self.src, pos)
        return DslSyntaxError(message, pos, line, col, expected)

    def _lex(self, src):
        toks, pos = [], 0
        while pos < len(src):
            m = _TOKEN_RE.match(src, pos)
            if not m:
                raise self._error(f"unexpected character {src[pos]!r}", pos)
            if m.lastgroup != "ws":
                toks.append(_Tok(m.lastgroup, m.group(), pos))
            pos = m.end()
        toks.append(_Tok("eof", "", len(src)))
        return toks

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _describe(self, t: _Tok) -> str:
        return "end of input" if t.kind == "eof" else repr(t.text)

    def expect(self, text: str) -> _Tok:
        t = self.tok
        if t.text != text or t.kind == "eof":
            raise self._error(f"expected {text!r}, found {self._describe(t)}", t.pos, [text])
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            raise self._error(f"expected an integer, found {self._describe(t)}", t.pos, ["integer"])
        self.i += 1
        return int(t.text)

    def name(self) -> _Tok:
        t = self.tok
        if t.kind != "name":
            raise self._error(f"expected a name, found {self._describe(t)}", t.pos, ["name"])
        self.i += 1
        return t

    def keyword(self, word: str):
        t = self.tok
        if t.kind != "name" or t.text != word:
            raise self._error(f"expected {word!r}, found {self._describe(t)}", t.pos, [word])
        self.i += 1

    def boolean(self) -> bool:
        t = self.tok
        if t.kind == "name" and t.text in ("true", "false"):
            self.i += 1
            return t.text == "true"
        raise self._error(f"expected true or false, found {self._describe(t)}", t.pos, ["true", "false"])

    # -- grammar --------------------------------------------------------------

    def parse(self) -> KnotTree:
        tree = self.knot("$")
        if self.tok.kind != "eof":
            raise self._error(f"unexpected {self._describe(self.tok)} after the knot", self.tok.pos, ["end of input"])
        return tree

    def knot(self, path: str) -> KnotTree:
        t = self.name()
        word = t.text
        if word == "unknot":
            return Unknot()
        if word == "torus":
            self.expect("(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(")")
            return Torus(p, q)
        if word == "hyp":
            self.expect("(")
            name = self.name().text
            self.expect(";")
            self.keyword("invertible")
            self.expect("=")
            inv = self.boolean()
            bit = "+"
            if self.accept(";"):
                self.keyword("bit")
                self.expect("=")
                b = self.tok
                if b.text not in ("+", "-"):
                    raise self._error(f"expected '+' or '-', found {self._describe(b)}", b.pos, ["+", "-"])
                self.i += 1
                bit = b.text
            self.expect(")")
            return HypKnot(name, inv, bit)
        if word == "cable":
            self.expect("(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(";")
            comp = self.knot(path + ".companion")
            self.expect(")")
            return Cable(p, q, comp)
        if word == "sum":
            self.expect("(")
            summands = [self.knot(f"{path}.summands[0]")]
            while self.accept(","):
                summands.append(self.knot(f"{path}.summands[{len(summands)}]"))
            self.expect(")")
            return Sum(tuple(summands))
        if word == "splice":
            self.expect("(")
            kgl = self.kglref(path)
            self.expect(";")
            children = [self.knot(f"{path}.children[0]")]
            inverted = False
            while True:
                if self.accept(","):
                    children.append(self.knot(f"{path}.children[{len(children)}]"))
                elif self.accept(";"):
                    self.keyword("inverse")
                    inverted = True
                    break
                else:
                    break
            self.expect(")")
            return HypSplice(kgl, tuple(children), inverted)
        if word in KNOTS:
            return KNOTS[word]
        raise SemanticError([Violation(path, "unknown-name", f"unknown knot {word!r}")])

    def kglref(self, path: str) -> KglDatum:
        t = self.name()
        if t.text == "kgl" and self.tok.text == "(":
            return self.inline_kgl(path)
        ref = t.text
        if self.tok.text == "(":
            self.expect("(")
            ref += f"({self.integer()})"
            self.expect(")")
        try:
            found = catalog_get(ref)
        except UnknownName:
            found = None
        if not isinstance(found, KglDatum):
            raise SemanticError([Violation(path, "unknown-name", f"unknown KGL {ref!r}")])
        return found

    def inline_kgl(self, path: str) -> KglDatum:
        self.expect("(")
        name = self.name().text
        self.expect(";")
        self.keyword("n")
        self.expect("=")
        n = self.integer()
        self.expect(";")
        self.keyword("B")
        self.expect("=")
        b = self.integer()
        self.expect(";")
        self.keyword("rho")
        self.expect("=")
        rho = self.cycles(n, path)
        inv = None
        if self.accept(";"):
            self.keyword("inv")
            self.expect("=")
            inv = self.cycles(n, path)
        self.expect(")")
        return KglDatum(name, n, b, rho, inv)

    def cycles(self, n: int, path: str) -> SignedPerm:
        start = self.tok.pos
        cycles = []
        self.expect("(")
        while True:
            tokens, sign = [], 1
            while self.tok.kind == "int":
                tokens.append(self.integer())
            if self.tok.text in ("+", "-"):
                sign = -1 if self.tok.text == "-" else 1
                self.i += 1
            self.expect(")")
            if tokens:
                cycles.append((tokens, sign))
            elif sign < 0:
                raise self._error("an empty cycle cannot carry a sign", start)
            if self.tok.text != "(":
                break
            self.expect("(")
        try:
            return SignedPerm.from_cycles(cycles, max(n, 0))
        except ValueError as exc:
            raise SemanticError([Violation(path, "kgl-cycles", f"bad signed cycles: {exc}")]) from None


def parse_knot(src: str, raw: bool = False) -> KnotTree:
    """Parse a knot, flatten nested sums and cables of the unknot, then validate.

    With ``raw=True`` the tree is returned exactly as written, unvalidated.
    """
    tree = _Parser(src).parse()
    if raw:
        return tree
    tree = _normalize(tree)
    report = validate(tree)
    if not report.ok:
        raise SemanticError(report.violations)
    return tree


# -- printing ---------------------------------------------------------------------

def print_kgl(kgl: KglDatum) -> str:
    try:
        if catalog_get(kgl.name) == kgl:
            return kgl.name
    except UnknownName:
        pass
    text = f"kgl({kgl.name}; n={kgl.n}; B={kgl.b_order}; rho={kgl.rho_gen}"
    if kgl.inversion is not None:
        text += f"; inv={kgl.inversion}"
    return text + ")"


def print_knot(t: KnotTree) -> str:
    if isinstance(t, Unknot):
        return "unknot"
    if isinstance(t, Torus):
        return f"torus({t.p},{t.q})"
    if isinstance(t, HypKnot):
        bit = "; bit=-" if t.orientation_bit == "-" else ""
        return f"hyp({t.name}; invertible={'true' if t.invertible else 'false'}{bit})"
    if isinstance(t, Cable):
        return f"cable({t.p},{t.q}; {print_knot(t.companion)})"
    if isinstance(t, Sum):
        return "sum(" + ", ".join(print_knot(s) for s in t.summands) + ")"
    if isinstance(t, HypSplice):
        tail = "; inverse" if t.inverted else ""
        return f"splice({print_kgl(t.kgl)}; " + ", ".join(print_knot(c) for c in t.children) + tail + ")"
    raise TypeError(f"not a knot tree: {t!r}")

