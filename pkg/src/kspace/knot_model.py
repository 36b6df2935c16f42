"""Companionship trees of long knots and the data decorating their vertices.

A tree is built from six node types.  ``Unknot``, ``Torus`` and ``HypKnot``
are the leaves (one-vertex JSJ trees).  ``Cable`` and ``Sum`` are the
Seifert-fibred internal vertices, and ``HypSplice`` is a vertex decorated by a
hyperbolic knot-generating link described through its ``KglDatum``.

All nodes are frozen dataclasses, so trees are hashable and can be shared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union

from .errors import InvalidTree
from .signed_perm import SignedPerm


@dataclass(frozen=True)
class KglDatum:
    """A hyperbolic KGL ``(L0, L1, ..., Ln)`` with its symmetry data.

    ``b_order`` is the order of the cyclic group of isometries preserving
    ``L0`` with its orientation, ``rho_gen`` the image of a fixed generator in
    the signed symmetric group, and ``inversion`` the optional signed
    permutation describing an isotopy from ``L`` to its inverse.
    """

    name: str
    n: int
    b_order: int
    rho_gen: SignedPerm
    inversion: Optional[SignedPerm] = None

    def rho(self, power: int) -> SignedPerm:
        return self.rho_gen ** power

    def image(self) -> list[SignedPerm]:
        """Images of gen^0, ..., gen^(b_order-1)."""
        return [self.rho_gen ** j for j in range(self.b_order)]

    def sort_key(self):
        inv = self.inversion.images if self.inversion is not None else ()
        return (self.name, self.n, self.b_order, self.rho_gen.images, self.inversion is not None, inv)


@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class Torus:
    p: int
    q: int


@dataclass(frozen=True)
class HypKnot:
    """A hyperbolic knot, known only by name.

    ``orientation_bit`` distinguishes a non-invertible knot from its inverse;
    for invertible knots the two bits name the same class.
    """

    name: str
    invertible: bool
    orientation_bit: str = "+"


@dataclass(frozen=True)
class Cable:
    p: int
    q: int
    companion: "KnotTree"


@dataclass(frozen=True)
class Sum:
    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))


@dataclass(frozen=True)
class HypSplice:
    """``J ⋈ L`` for a hyperbolic KGL ``L``.

    ``inverted`` is a formal marker for the inverse of a splice whose KGL
    carries no inversion datum; two markers cancel.
    """

    kgl: KglDatum
    children: tuple
    inverted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


KnotTree = Union[Unknot, Torus, HypKnot, Cable, Sum, HypSplice]
KNOT_TYPES = (Unknot, Torus, HypKnot, Cable, Sum, HypSplice)


# -- validation -------------------------------------------------------------

# violations that normalize() repairs
FLATTENING = frozenset({"nested-sum", "cable-of-unknot"})


@dataclass(frozen=True)
class Violation:
    path: str
    code: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def only_flattening(self) -> bool:
        return all(v.code in FLATTENING for v in self.violations)


def _is_involution(p: tuple[int, ...]) -> bool:
    return all(p[p[i] - 1] == i + 1 for i in range(len(p)))


def validate_kgl(kgl: KglDatum, path: str = "$") -> list[Violation]:
    out = []

    def bad(code, msg):
        out.append(Violation(path, code, msg))

    if kgl.n < 0:
        bad("kgl-n", f"KGL {kgl.name}: negative component count {kgl.n}")
    if kgl.b_order < 1:
        bad("kgl-order", f"KGL {kgl.name}: B_L order must be positive, got {kgl.b_order}")
        return out
    if kgl.rho_gen.n != kgl.n:
        bad("kgl-size", f"KGL {kgl.name}: rho generator acts on {kgl.rho_gen.n} letters, n={kgl.n}")
        return out
    if kgl.b_order % kgl.rho_gen.order():
        bad("kgl-rho-order",
            f"KGL {kgl.name}: order of rho(gen)={kgl.rho_gen.order()} does not divide |B_L|={kgl.b_order}")
        return out
    iota = kgl.inversion
    if iota is None:
        return out
    if iota.n != kgl.n:
        bad("kgl-size", f"KGL {kgl.name}: inversion acts on {iota.n} letters, n={kgl.n}")
        return out
    if not _is_involution(iota.perm):
        bad("kgl-inversion", f"KGL {kgl.name}: unsigned part of inversion {iota} is not an involution")
    # the inversion conjugates B_L to its inverse and squares into it
    image = set(kgl.image())
    if kgl.rho_gen.conjugate(iota) != kgl.rho_gen.inverse():
        bad("kgl-inversion-compat",
            f"KGL {kgl.name}: inversion {iota} does not conjugate rho(gen) to its inverse")
    if iota * iota not in image:
        bad("kgl-inversion-compat", f"KGL {kgl.name}: square of inversion {iota} is not in the image of B_L")
    return out


def validate(tree: KnotTree) -> ValidationReport:
    """Collect every structural violation in ``tree`` with its path."""
    out: list[Violation] = []
    _validate(tree, "$", out)
    return ValidationReport(tuple(out))


def _validate(t, path, out):
    def bad(code, msg):
        out.append(Violation(path, code, msg))

    if isinstance(t, Unknot):
        return
    if isinstance(t, Torus):
        if gcd(t.p, t.q) != 1:
            bad("torus-gcd", f"torus({t.p},{t.q}): parameters not coprime")
        if abs(t.p) < 2 or abs(t.q) < 2:
            bad("torus-trivial", f"torus({t.p},{t.q}) is an unknot; need |p|,|q| >= 2")
        return
    if isinstance(t, HypKnot):
        if not t.name or not t.name.isalnum():
            bad("name", f"hyperbolic knot name {t.name!r} is not alphanumeric")
        if t.orientation_bit not in ("+", "-"):
            bad("orientation-bit", f"orientation bit {t.orientation_bit!r} not in '+-'")
        return
    if isinstance(t, Cable):
        if gcd(t.p, t.q) != 1:
            bad("cable-gcd", f"cable({t.p},{t.q}): parameters not coprime")
        if isinstance(t.companion, Unknot):
            bad("cable-of-unknot", f"cable({t.p},{t.q}) of the unknot must be written as a torus knot")
        _validate(t.companion, path + ".companion", out)
        return
    if isinstance(t, Sum):
        if len(t.summands) < 2:
            bad("sum-length", f"connect sum needs at least 2 summands, got {len(t.summands)}")
        for i, s in enumerate(t.summands):
            sub = f"{path}.summands[{i}]"
            if isinstance(s, Unknot):
                out.append(Violation(sub, "unknot-summand", "Unknot summand"))
            elif isinstance(s, Sum):
                out.append(Violation(sub, "nested-sum", "nested connect sum"))
            _validate(s, sub, out)
        return
    if isinstance(t, HypSplice):
        out.extend(validate_kgl(t.kgl, path))
        if len(t.children) != t.kgl.n:
            bad("children-length", f"children length {len(t.children)} ≠ n={t.kgl.n}")
        if not t.children:
            bad("splice-empty", "a splice needs at least one companion")
        if t.inverted and t.kgl.inversion is not None:
            bad("inverse-marker", f"formal inverse marker on KGL {t.kgl.name}, which has an inversion datum")
        for i, c in enumerate(t.children):
            sub = f"{path}.children[{i}]"
            if isinstance(c, Unknot):
                out.append(Violation(sub, "unknot-child", "Unknot companion"))
            _validate(c, sub, out)
        return
    bad("type", f"not a knot tree node: {type(t).__name__}")


def normalize(tree: KnotTree) -> KnotTree:
    """Flatten nested sums and rewrite cables of the unknot as torus knots.

    Raises ``InvalidTree`` when violations other than those two remain.
    """
    out = _normalize(tree)
    report = validate(out)
    if not report.ok:
        raise InvalidTree(report.violations)
    return out


def _normalize(t):
    if isinstance(t, Cable):
        comp = _normalize(t.companion)
        if isinstance(comp, Unknot):
            return Torus(t.p, t.q)
        return Cable(t.p, t.q, comp)
    if isinstance(t, Sum):
        flat = []
        for s in t.summands:
            s = _normalize(s)
            if isinstance(s, Sum):
                flat.extend(s.summands)
            else:
                flat.append(s)
        return Sum(tuple(flat))
    if isinstance(t, HypSplice):
        return HypSplice(t.kgl, tuple(_normalize(c) for c in t.children), t.inverted)
    return t


def walk(tree: KnotTree, path: str = "$"):
    """Yield ``(path, node)`` for every node, parents first."""
    yield path, tree
    if isinstance(tree, Cable):
        yield from walk(tree.companion, path + ".companion")
    elif isinstance(tree, Sum):
        for i, s in enumerate(tree.summands):
            yield from walk(s, f"{path}.summands[{i}]")
    elif isinstance(tree, HypSplice):
        for i, c in enumerate(tree.children):
            yield from walk(c, f"{path}.children[{i}]")


def depth(tree: KnotTree) -> int:
    if isinstance(tree, Cable):
        return 1 + depth(tree.companion)
    if isinstance(tree, Sum):
        return 1 + max(depth(s) for s in tree.summands)
    if isinstance(tree, HypSplice):
        return 1 + max((depth(c) for c in tree.children), default=0)
    return 1
