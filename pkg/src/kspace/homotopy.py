"""Term algebra of homotopy types and the recursive evaluation on trees.

Every component of the space of long knots is a K(π,1), and the recursion
only ever produces points, circles, products, configuration-space quotients
``C2(n) x_{Σ} ∏ X_i`` and twisted products ``(∏ F_i) x_{Z_m} S^1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union

from .errors import InvalidTree
from .knot_model import Cable, HypKnot, HypSplice, KnotTree, Sum, Torus, Unknot, validate
from .signed_perm import SignedPerm
from .symmetry import canonical_form, compute_Af

CIRCLE_LABELS = ("meridian", "cabling", "base_L0", "plain")


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class Circle:
    # role tags are metadata: expressions compare equal regardless of them
    label: str = field(default="plain", compare=False)


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class Config2ModYoung:
    """``C2(n) x_{Σ_f} ∏ factors`` for the Young subgroup with the given blocks."""

    n: int
    young: tuple
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "young", tuple(tuple(sorted(b)) for b in self.young))
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) != self.n:
            raise ValueError(f"C2({self.n}) quotient with {len(self.factors)} factors")
        flat = sorted(i for b in self.young for i in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError(f"young blocks {self.young} do not partition 1..{self.n}")
        for block in self.young:
            first = self.factors[block[0] - 1]
            if any(self.factors[i - 1] != first for i in block):
                raise ValueError(f"factors in young block {block} differ")


@dataclass(frozen=True)
class MonodromyDatum:
    sp: SignedPerm

    @property
    def per_slot_inverted(self) -> tuple[bool, ...]:
        return tuple(s < 0 for s in self.sp.signs)


@dataclass(frozen=True)
class TwistedProduct:
    """``(∏ fibers) x_{Z_m} S^1``; Z_m rotates the circle and acts on the fibre by the monodromy."""

    group_order: int
    monodromy: MonodromyDatum
    fibers: tuple

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        if self.group_order < 1:
            raise ValueError("twisted product needs m >= 1")
        if self.monodromy.sp.n != len(self.fibers):
            raise ValueError("monodromy size does not match the number of fibres")
        if self.group_order % self.monodromy.sp.order():
            raise ValueError(f"monodromy order {self.monodromy.sp.order()} does not divide m={self.group_order}")


HomotopyExpr = Union[Point, Circle, Product, Config2ModYoung, TwistedProduct]


# -- evaluation -----------------------------------------------------------------

def young_partition(summands) -> tuple[tuple[int, ...], ...]:
    """Blocks of 1-based indices of isotopic summands, in order of first appearance."""
    blocks: dict = {}
    for i, s in enumerate(summands, start=1):
        blocks.setdefault(canonical_form(s), []).append(i)
    return tuple(tuple(b) for b in blocks.values())


def homotopy_type(tree: KnotTree) -> HomotopyExpr:
    """Homotopy type of the component of the knot described by ``tree``."""
    report = validate(tree)
    if not report.ok:
        raise InvalidTree(report.violations)
    return _homotopy_type(tree)


def _homotopy_type(t):
    if isinstance(t, Unknot):
        return Point()
    if isinstance(t, Torus):
        return Circle("cabling")
    if isinstance(t, HypKnot):
        return Product((Circle("meridian"), Circle("base_L0")))
    if isinstance(t, Cable):
        return Product((Circle("cabling"), _homotopy_type(t.companion)))
    if isinstance(t, Sum):
        factors = tuple(_homotopy_type(s) for s in t.summands)
        return Config2ModYoung(len(factors), young_partition(t.summands), factors)
    if isinstance(t, HypSplice):
        af = compute_Af(t.kgl, t.children)
        fibers = tuple(_homotopy_type(c) for c in t.children)
        twisted = TwistedProduct(af.order, MonodromyDatum(af.generator_image), fibers)
        return Product((Circle("meridian"), twisted))
    raise TypeError(f"not a knot tree: {t!r}")


# -- normal form ------------------------------------------------------------------

def expr_key(e: HomotopyExpr) -> tuple:
    if isinstance(e, Point):
        return (0,)
    if isinstance(e, Circle):
        return (1,)
    if isinstance(e, Product):
        return (2, tuple(expr_key(f) for f in e.factors))
    if isinstance(e, Config2ModYoung):
        return (3, e.n, e.young, tuple(expr_key(f) for f in e.factors))
    if isinstance(e, TwistedProduct):
        return (4, e.group_order, e.monodromy.sp.images, tuple(expr_key(f) for f in e.fibers))
    raise TypeError(f"not a homotopy expression: {e!r}")


def simplify(e: HomotopyExpr) -> HomotopyExpr:
    """Normal form: flat products without units, sorted factors, reduced twisted products."""
    if isinstance(e, (Point, Circle)):
        return e
    if isinstance(e, Product):
        flat = []
        for f in e.factors:
            f = simplify(f)
            if isinstance(f, Product):
                flat.extend(f.factors)
            elif not isinstance(f, Point):
                flat.append(f)
        if not flat:
            return Point()
        if len(flat) == 1:
            return flat[0]
        return Product(tuple(sorted(flat, key=expr_key)))
    if isinstance(e, Config2ModYoung):
        return Config2ModYoung(e.n, e.young, tuple(simplify(f) for f in e.factors))
    if isinstance(e, TwistedProduct):
        fibers = tuple(simplify(f) for f in e.fibers)
        if e.group_order == 1:
            return simplify(Product(fibers + (Circle("base_L0"),)))
        if all(isinstance(f, Point) for f in fibers):
            # a free rotation quotient of a circle is a circle
            return Circle("base_L0")
        return _twisted_normal_form(e.group_order, e.monodromy.sp, fibers)
    raise TypeError(f"not a homotopy expression: {e!r}")


def _mono_key(sp: SignedPerm) -> tuple:
    # least images first, positive before negative
    return tuple((abs(x), x < 0) for x in sp.images)


def _twisted_normal_form(m: int, sp: SignedPerm, fibers: tuple) -> TwistedProduct:
    # Relabeling fibres and changing the generator of Z_m give homeomorphic
    # spaces; pick sorted fibres and the least conjugated monodromy.
    n = len(fibers)
    order = sorted(range(n), key=lambda i: expr_key(fibers[i]))
    groups = [list(g) for _, g in itertools.groupby(order, key=lambda i: expr_key(fibers[i]))]
    powers = [k for k in range(1, m) if gcd(k, m) == 1] or [1]
    best = None
    for arrangement in itertools.product(*(itertools.permutations(g) for g in groups)):
        new_order = [i for g in arrangement for i in g]
        images = [0] * n
        for new_pos, old in enumerate(new_order, start=1):
            images[old] = new_pos
        relabel = SignedPerm(tuple(images))
        for k in powers:
            cand = (sp ** k).conjugate(relabel)
            if best is None or _mono_key(cand) < _mono_key(best):
                best = cand
    sorted_fibers = tuple(fibers[i] for i in order)
    return TwistedProduct(m, MonodromyDatum(best), sorted_fibers)


def dimension(e: HomotopyExpr) -> Optional[int]:
    """Dimension of the closed flat-manifold model, or None when there is none."""
    if isinstance(e, Point):
        return 0
    if isinstance(e, Circle):
        return 1
    if isinstance(e, Product):
        dims = [dimension(f) for f in e.factors]
        return None if None in dims else sum(dims)
    if isinstance(e, TwistedProduct):
        dims = [dimension(f) for f in e.fibers]
        return None if None in dims else 1 + sum(dims)
    if isinstance(e, Config2ModYoung):
        return None
    raise TypeError(f"not a homotopy expression: {e!r}")


def walk_expr(e: HomotopyExpr):
    yield e
    children = ()
    if isinstance(e, Product):
        children = e.factors
    elif isinstance(e, Config2ModYoung):
        children = e.factors
    elif isinstance(e, TwistedProduct):
        children = e.fibers
    for c in children:
        yield from walk_expr(c)


def relabel_circles(e: HomotopyExpr, label: str = "plain") -> HomotopyExpr:
    """Copy of ``e`` with every circle tag replaced."""
    if isinstance(e, Circle):
        return Circle(label)
    if isinstance(e, Product):
        return Product(tuple(relabel_circles(f, label) for f in e.factors))
    if isinstance(e, Config2ModYoung):
        return Config2ModYoung(e.n, e.young, tuple(relabel_circles(f, label) for f in e.factors))
    if isinstance(e, TwistedProduct):
        return TwistedProduct(e.group_order, e.monodromy, tuple(relabel_circles(f, label) for f in e.fibers))
    return e


# -- rendering --------------------------------------------------------------------

def _young_name(young) -> str:
    sizes = sorted((len(b) for b in young), reverse=True)
    return "x".join(f"S{s}" for s in sizes)


def _render_factor_list(factors) -> tuple[str, bool]:
    """Render factors as a product, grouping equal neighbours into powers.

    Returns the text and whether it has a top-level ``x``.
    """
    groups = [(f, len(list(g))) for f, g in itertools.groupby(factors)]
    parts = []
    for f, k in groups:
        text, compound = _render(f)
        if k > 1:
            parts.append(f"({text})^{k}")
        elif compound and len(groups) > 1:
            parts.append(f"({text})")
        else:
            parts.append(text)
    if len(groups) == 1:
        f, k = groups[0]
        return parts[0], k == 1 and _render(f)[1]
    return " x ".join(parts), True


def _render(e) -> tuple[str, bool]:
    if isinstance(e, Point):
        return "*", False
    if isinstance(e, Circle):
        return "S^1", False
    if isinstance(e, Product):
        if not e.factors:
            return "*", False
        return _render_factor_list(e.factors)
    if isinstance(e, Config2ModYoung):
        body, compound = _render_factor_list(e.factors)
        if compound:
            body = f"({body})"
        return f"C2({e.n}) x_{{{_young_name(e.young)}}} {body}", True
    if isinstance(e, TwistedProduct):
        parts = []
        for f in e.fibers:
            text, compound = _render(f)
            parts.append(f"({text})" if compound and len(e.fibers) > 1 else text)
        body = " x ".join(parts)
        if len(e.fibers) > 1 or _render(e.fibers[0])[1]:
            body = f"({body})"
        return f"{body} x_{{Z{e.group_order}}} S^1", True
    raise TypeError(f"not a homotopy expression: {e!r}")


def expr_render(e: HomotopyExpr) -> str:
    """Plain-text form, e.g. ``S^1 x (((S^1)^2 x (S^1)^2) x_{Z4} S^1)``."""
    return _render(e)[0]
