"""Seeded random companionship trees for property and acceptance tests."""

from __future__ import annotations

import random

from kspace.catalog import KGLS, sakuma, stoimenow
from kspace.knot_model import Cable, HypKnot, HypSplice, Sum, Torus, normalize
from kspace.symmetry import invert_class

LEAVES = (
    Torus(2, 3), Torus(2, 5), Torus(3, 4), Torus(2, -3),
    HypKnot("fig8", True), HypKnot("k52", True),
    HypKnot("k817", False, "+"), HypKnot("k817", False, "-"), HypKnot("k932", False, "+"),
)
KGL_POOL = (KGLS["borromean"], KGLS["whitehead"], KGLS["link6_3_2"],
            stoimenow(2), stoimenow(3), sakuma(1), sakuma(3))
CABLES = ((2, 3), (2, 5), (3, 2), (3, 7), (-2, 5))


def random_tree(rng: random.Random, depth: int = 4, max_summands: int = 3):
    """A valid normalized tree of depth at most ``depth``."""
    return normalize(_tree(rng, depth, max_summands))


def _tree(rng, depth, max_summands):
    if depth <= 1 or rng.random() < 0.3:
        return rng.choice(LEAVES)
    kind = rng.choice(("cable", "sum", "splice"))
    if kind == "cable":
        p, q = rng.choice(CABLES)
        return Cable(p, q, _tree(rng, depth - 1, max_summands))
    if kind == "sum":
        k = rng.randint(2, max_summands)
        out = []
        while len(out) < k:
            s = _tree(rng, depth - 1, max_summands)
            if isinstance(s, Sum):
                continue
            # repeats make non-trivial Young subgroups
            out.append(rng.choice(out) if out and rng.random() < 0.3 else s)
        return Sum(tuple(out))
    kgl = rng.choice(KGL_POOL)
    base = _tree(rng, depth - 1, max_summands)
    children = []
    for _ in range(kgl.n):
        r = rng.random()
        if r < 0.4:
            children.append(base)
        elif r < 0.6:
            children.append(invert_class(base))
        else:
            children.append(_tree(rng, depth - 1, max_summands))
    return HypSplice(kgl, tuple(children))


def random_trees(seed: int, count: int, depth: int = 4, max_summands: int = 3):
    rng = random.Random(seed)
    return [random_tree(rng, depth, max_summands) for _ in range(count)]
