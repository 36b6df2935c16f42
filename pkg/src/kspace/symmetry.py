"""Inversion of knot classes, invertibility, canonical forms and A_f."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import SizeMismatch
from .knot_model import Cable, HypKnot, HypSplice, KglDatum, KnotTree, Sum, Torus, Unknot, normalize
from .signed_perm import SignedPerm


@dataclass(frozen=True)
class CyclicSubgroup:
    """The subgroup of B_L generated by gen^index."""

    of: KglDatum
    index: int

    def __post_init__(self):
        if self.index < 1 or self.of.b_order % self.index:
            raise ValueError(f"index {self.index} does not divide |B_L|={self.of.b_order}")

    @property
    def order(self) -> int:
        return self.of.b_order // self.index

    @property
    def generator_image(self) -> SignedPerm:
        return self.of.rho_gen ** self.index

    def elements(self) -> list[int]:
        """Exponents j with gen^j in the subgroup."""
        return list(range(0, self.of.b_order, self.index))


def invert_class(tree: KnotTree) -> KnotTree:
    """Companionship tree of the inverse knot."""
    if isinstance(tree, (Unknot, Torus)):
        return tree
    if isinstance(tree, HypKnot):
        if tree.invertible:
            return tree
        flipped = "-" if tree.orientation_bit == "+" else "+"
        return HypKnot(tree.name, tree.invertible, flipped)
    if isinstance(tree, Cable):
        return Cable(tree.p, tree.q, invert_class(tree.companion))
    if isinstance(tree, Sum):
        return Sum(tuple(invert_class(s) for s in tree.summands))
    if isinstance(tree, HypSplice):
        iota = tree.kgl.inversion
        if iota is None:
            return HypSplice(tree.kgl, tree.children, not tree.inverted)
        return HypSplice(tree.kgl, tuple(iota.act(tree.children, invert_class)), tree.inverted)
    raise TypeError(f"not a knot tree: {tree!r}")


# -- canonical forms -----------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def sort_key(tree: KnotTree) -> tuple:
    """Total order on trees: node tag, then numeric fields, then children."""
    if isinstance(tree, Unknot):
        return (0,)
    if isinstance(tree, Torus):
        return (1, tree.p, tree.q)
    if isinstance(tree, HypKnot):
        return (2, tree.name, tree.invertible, tree.orientation_bit)
    if isinstance(tree, Cable):
        return (3, tree.p, tree.q, sort_key(tree.companion))
    if isinstance(tree, Sum):
        return (4, tuple(sort_key(s) for s in tree.summands))
    if isinstance(tree, HypSplice):
        return (5, tree.kgl.sort_key(), tree.inverted, tuple(sort_key(c) for c in tree.children))
    raise TypeError(f"not a knot tree: {tree!r}")


def _canonical_torus(p: int, q: int) -> Torus:
    small, big = sorted((abs(p), abs(q)))
    sign = 1 if p * q > 0 else -1
    return Torus(small, sign * big)


@lru_cache(maxsize=1 << 16)
def canonical_form(tree: KnotTree) -> KnotTree:
    """Deterministic representative of the isotopy class of a normalized tree.

    Sum summands are sorted; splice children are replaced by the least tuple
    in their orbit under the image of B_L.
    """
    if isinstance(tree, Unknot):
        return tree
    if isinstance(tree, Torus):
        return _canonical_torus(tree.p, tree.q)
    if isinstance(tree, HypKnot):
        return HypKnot(tree.name, True, "+") if tree.invertible else tree
    if isinstance(tree, Cable):
        return Cable(tree.p, tree.q, canonical_form(tree.companion))
    if isinstance(tree, Sum):
        return Sum(tuple(sorted((canonical_form(s) for s in tree.summands), key=sort_key)))
    if isinstance(tree, HypSplice):
        children, _ = splice_orbit_min(tree.kgl, tuple(canonical_form(c) for c in tree.children))
        return HypSplice(tree.kgl, children, tree.inverted)
    raise TypeError(f"not a knot tree: {tree!r}")


def invert_canonical(tree: KnotTree) -> KnotTree:
    return canonical_form(invert_class(tree))


def act_on_classes(sp: SignedPerm, children: Sequence[KnotTree]) -> tuple:
    """Signed-permutation action on a tuple of canonical trees, staying canonical."""
    return tuple(sp.act(children, invert_canonical))


@lru_cache(maxsize=1 << 14)
def splice_orbit_min(kgl: KglDatum, children: tuple) -> tuple[tuple, int]:
    """Least relabeling of canonical ``children`` under rho(B_L), and the power used."""
    best, best_j, best_key = None, 0, None
    for j in range(kgl.b_order):
        cand = act_on_classes(kgl.rho(j), children)
        key = tuple(sort_key(c) for c in cand)
        if best_key is None or key < best_key:
            best, best_j, best_key = cand, j, key
    return best, best_j


def classes_equal(a: KnotTree, b: KnotTree) -> bool:
    return canonical_form(normalize(a)) == canonical_form(normalize(b))


# -- invertibility and A_f -----------------------------------------------------

def _slotwise_equal(xs: Sequence[KnotTree], ys: Sequence[KnotTree]) -> bool:
    return all(canonical_form(x) == canonical_form(y) for x, y in zip(xs, ys))


def is_invertible(tree: KnotTree) -> bool:
    """Decide invertibility recursively from the structure of the tree.

    At a splice vertex the recorded inversion datum may be composed with any
    element of rho(B_L): each such composite comes from another isotopy of
    ``L`` onto its inverse that preserves ``L0`` with orientation.
    """
    if isinstance(tree, (Unknot, Torus)):
        return True
    if isinstance(tree, HypKnot):
        return tree.invertible
    if isinstance(tree, Cable):
        return is_invertible(tree.companion)
    if isinstance(tree, Sum):
        counts = Counter(canonical_form(s) for s in tree.summands)
        return all(counts[invert_canonical(c)] == k for c, k in counts.items())
    if isinstance(tree, HypSplice):
        iota = tree.kgl.inversion
        if iota is None:
            return False
        flipped = iota.act(tree.children, invert_class)
        return any(_slotwise_equal(b.act(flipped, invert_class), tree.children)
                   for b in tree.kgl.image())
    raise TypeError(f"not a knot tree: {tree!r}")


def effective_inversion(tree: HypSplice) -> SignedPerm:
    """An element of rho(B_L)·ι fixing the children slot-wise (tree must be invertible)."""
    iota = tree.kgl.inversion
    for b in tree.kgl.image():
        cand = b * iota
        if _slotwise_equal(cand.act(tree.children, invert_class), tree.children):
            return cand
    raise ValueError("splice is not invertible")


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def compute_Af(kgl: KglDatum, children: Sequence[KnotTree]) -> CyclicSubgroup:
    """Largest subgroup of B_L whose action fixes the tuple of companion classes."""
    children = tuple(children)
    if len(children) != kgl.n:
        raise SizeMismatch(f"KGL {kgl.name} has n={kgl.n}, got {len(children)} companions")
    for m in _divisors(kgl.b_order):
        if _slotwise_equal(kgl.rho(m).act(children, invert_class), children):
            return CyclicSubgroup(kgl, m)
    raise AssertionError("unreachable: gen^|B_L| is the identity")
