"""Fundamental groups: the extension structure, and flat presentations where they are determined.

Every component is aspherical, so π_1 determines its homotopy type.  The
structural description follows the expression: products give direct
products, twisted products give semidirect products with Z, and the
configuration-space quotients give split extensions by mixed braid groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .braids import mixed_braid
from .errors import NonConcreteAction
from .fpgroup import FpGroup, commutator, free_reduce, word_inverse
from .homology import _young_blocks, inversion_matrix
from .homotopy import (Circle, Config2ModYoung, HomotopyExpr, Point, Product, TwistedProduct,
                       homotopy_type, simplify, walk_expr)
from .knot_model import Cable, HypKnot, HypSplice, KnotTree, Sum, Torus, Unknot, normalize
from .signed_perm import SignedPerm
from .symmetry import canonical_form, compute_Af


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class ZLeaf:
    pass


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple


@dataclass(frozen=True)
class Semidirect:
    """``kernel ⋊ Z``; the generator of Z acts by ``monodromy``, and ``group_order`` is kept as metadata."""

    kernel: "ExtensionTree"
    monodromy: SignedPerm
    group_order: int


@dataclass(frozen=True)
class BraidExtension:
    """Split extension ``kernel ⋊ B_n^{Σ_f}``, braids permuting the factors of the kernel."""

    n: int
    young: tuple
    kernel: "ExtensionTree"


ExtensionTree = Union[Trivial, ZLeaf, DirectProduct, Semidirect, BraidExtension]


def pi1_structure(e: HomotopyExpr) -> ExtensionTree:
    if isinstance(e, Point):
        return Trivial()
    if isinstance(e, Circle):
        return ZLeaf()
    if isinstance(e, Product):
        return DirectProduct(tuple(pi1_structure(f) for f in e.factors))
    if isinstance(e, TwistedProduct):
        kernel = DirectProduct(tuple(pi1_structure(f) for f in e.fibers))
        return Semidirect(kernel, e.monodromy.sp, e.group_order)
    if isinstance(e, Config2ModYoung):
        return BraidExtension(e.n, e.young, DirectProduct(tuple(pi1_structure(f) for f in e.factors)))
    raise TypeError(f"not a homotopy expression: {e!r}")


def _z_rank(t) -> int | None:
    """Rank if ``t`` is free abelian, else None."""
    if isinstance(t, Trivial):
        return 0
    if isinstance(t, ZLeaf):
        return 1
    if isinstance(t, DirectProduct):
        ranks = [_z_rank(f) for f in t.factors]
        return None if None in ranks else sum(ranks)
    return None


def _young_label(young) -> str:
    return "".join("{" + ",".join(str(i) for i in b) + "}" for b in young)


def render_structure(t: ExtensionTree) -> str:
    """Text form such as ``Z x (Z^4 ⋊_{(1 2 -)} Z)``."""
    return _render(t, top=True)


def _render(t, top=False) -> str:
    r = _z_rank(t)
    if r is not None:
        return "1" if r == 0 else ("Z" if r == 1 else f"Z^{r}")
    if isinstance(t, DirectProduct):
        parts = [f for f in t.factors if _z_rank(f) != 0]
        if len(parts) == 1:
            return _render(parts[0], top)
        text = " x ".join(_render(f) for f in parts)
        return text if top else f"({text})"
    if isinstance(t, Semidirect):
        text = f"{_render(t.kernel)} ⋊_{{{t.monodromy}}} Z"
        return text if top else f"({text})"
    if isinstance(t, BraidExtension):
        text = f"{_render(t.kernel)} ⋊ B_{t.n}^{_young_label(t.young)}"
        return text if top else f"({text})"
    raise TypeError(f"not an extension tree: {t!r}")


# -- flat presentations ------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.names: list[str] = []
        self.relators: list = []
        self.counters: dict = {}

    def gen(self, role: str) -> int:
        self.counters[role] = self.counters.get(role, 0) + 1
        self.names.append(f"{role}{self.counters[role]}")
        return len(self.names)

    def commute(self, xs, ys):
        for x in xs:
            for y in ys:
                self.relators.append(commutator((x,), (y,)))


def _is_free_abelian(t: KnotTree) -> bool:
    e = simplify(homotopy_type(t))
    return not any(isinstance(x, (TwistedProduct, Config2ModYoung)) for x in walk_expr(e))


def _build(t: KnotTree, b: _Builder) -> list[int]:
    """Add generators and relators for canonical ``t``; returns its generators in H_1-model order."""
    if isinstance(t, Unknot):
        return []
    if isinstance(t, Torus):
        return [b.gen("c")]
    if isinstance(t, HypKnot):
        m, base = b.gen("m"), b.gen("t")
        b.commute([m], [base])
        return [m, base]
    if isinstance(t, Cable):
        c = b.gen("c")
        rest = _build(t.companion, b)
        b.commute([c], rest)
        return [c] + rest
    if isinstance(t, HypSplice):
        m, base = b.gen("m"), b.gen("t")
        blocks = [_build(c, b) for c in t.children]
        fibre = [x for blk in blocks for x in blk]
        b.commute([m], [base] + fibre)
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                b.commute(blocks[i], blocks[j])
        sp = compute_Af(t.kgl, t.children).generator_image
        for i, img in enumerate(sp.images):
            target = blocks[abs(img) - 1]
            if img > 0:
                images = [(y,) for y in target]
            else:
                if not _is_free_abelian(t.children[i]):
                    raise NonConcreteAction(
                        "a flipped companion with non-abelian π_1 has no concrete action on a presentation")
                A = inversion_matrix(t.children[i])
                images = []
                for col in range(A.ncols):
                    w = []
                    for row in range(A.nrows):
                        a = A.rows[row][col]
                        w.extend([target[row] if a > 0 else -target[row]] * abs(a))
                    images.append(tuple(w))
            for x, w in zip(blocks[i], images):
                # t x t^-1 = phi(x)
                b.relators.append(free_reduce((base, x, -base) + word_inverse(w)))
        return [m, base] + fibre
    if isinstance(t, Sum):
        blocks = [_build(s, b) for s in t.summands]
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                b.commute(blocks[i], blocks[j])
        n = len(blocks)
        braid = mixed_braid(n, _young_blocks(t.summands))
        hgens = [b.gen("b") for _ in range(braid.presentation.ngens)]
        for r in braid.presentation.relators:
            b.relators.append(tuple(hgens[abs(x) - 1] * (1 if x > 0 else -1) for x in r))
        for h, image in zip(hgens, braid.generator_images):
            p = braid.perm(image)
            for i, blk in enumerate(blocks):
                for x, y in zip(blk, blocks[p[i] - 1]):
                    # h^-1 x h = x' in the summand the strand moves to
                    b.relators.append(free_reduce((-h, x, h, -y)))
        return [x for blk in blocks for x in blk] + hgens
    raise TypeError(f"not a knot tree: {t!r}")


def pi1_presentation(tree: KnotTree) -> FpGroup:
    """Finite presentation of π_1, for trees where the twisting is concrete.

    Raises ``NonConcreteAction`` when a monodromy flips a companion whose
    π_1 is not abelian.
    """
    b = _Builder()
    _build(canonical_form(normalize(tree)), b)
    rels = [r for r in b.relators if r]
    return FpGroup(tuple(b.names), tuple(rels))
