"""First homology of knot-space components, the inversion map on it, and the Gramain pairing.

Each canonical tree gets an abelian presentation whose generators are the
circles of its homotopy type (meridian, cabling, base) together with the
generators of the abelianized mixed braid groups at connected-sum vertices.
All matrices below act on column vectors in these generator coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional

from .abelian import AbelianPresentation, H1Result
from .braids import braid_perm, mixed_braid
from .errors import NonConcreteAction, NotInvertible
from .fpgroup import free_reduce, word_inverse
from .homotopy import (Circle, Config2ModYoung, HomotopyExpr, Point, Product, TwistedProduct,
                       homotopy_type, simplify)
from .intmatrix import IntMatrix, block_diag
from .knot_model import KNOT_TYPES, Cable, HypKnot, HypSplice, KnotTree, Sum, Torus, Unknot, normalize
from .signed_perm import SignedPerm
from .symmetry import canonical_form, compute_Af, invert_canonical, is_invertible, splice_orbit_min


@dataclass(frozen=True)
class H1Model:
    """Abelian presentation of H_1 for one canonical tree, with the Gramain data.

    ``error`` is set when a relation needs an inversion map that does not
    exist; the generators and Gramain vectors are still available then.
    """

    tree: KnotTree
    tags: tuple
    relations: tuple
    gramain_class: tuple
    gramain_cocycle: tuple
    offsets: tuple = ()
    error: Optional[str] = None

    @property
    def ngens(self) -> int:
        return len(self.tags)

    @cached_property
    def pres(self) -> AbelianPresentation:
        if self.error is not None:
            raise NonConcreteAction(self.error)
        return AbelianPresentation(self.ngens, self.relations, self.tags)


def _unit(n: int, i: int) -> tuple:
    return tuple(int(j == i) for j in range(n))


def _young_blocks(summands) -> tuple:
    blocks: dict = {}
    for i, s in enumerate(summands, start=1):
        blocks.setdefault(s, []).append(i)
    return tuple(tuple(b) for b in blocks.values())


def _splice_monodromy(t: HypSplice) -> SignedPerm:
    return compute_Af(t.kgl, t.children).generator_image


def _fiber_matrix(sp: SignedPerm, children, sizes, offsets, total: int, dst_offsets=None) -> list[list[int]]:
    """Matrix sending child block i to block |sp(i)|, through the inversion map on flipped slots."""
    dst_offsets = offsets if dst_offsets is None else dst_offsets
    out = [[0] * total for _ in range(total)]
    for i, img in enumerate(sp.images):
        j = abs(img) - 1
        if img > 0:
            block = IntMatrix.identity(sizes[i])
        else:
            block = inversion_matrix(children[i])
        for r in range(sizes[i]):
            for c in range(sizes[i]):
                out[dst_offsets[j] + r][offsets[i] + c] = block.rows[r][c]
    return out


def _combine(parts, extra_rows):
    """Block-diagonal relations of ``parts`` followed by ``extra_rows`` (a callable or None)."""
    total = sum(p.ngens for p in parts)
    err = next((p.error for p in parts if p.error is not None), None)
    rows = []
    offset = 0
    for p in parts:
        for r in p.relations:
            rows.append((0,) * offset + tuple(r) + (0,) * (total - offset - p.ngens))
        offset += p.ngens
    if err is None and extra_rows is not None:
        try:
            rows.extend(tuple(r) for r in extra_rows())
        except NonConcreteAction as exc:
            err = str(exc)
    return tuple(rows), err


def _leaf(t, tags, relations=()):
    e = _unit(len(tags), 0)
    return H1Model(t, tuple(tags), tuple(relations), e, e)


@lru_cache(maxsize=4096)
def model(t: KnotTree) -> H1Model:
    """H_1 model of a canonical tree."""
    if isinstance(t, Unknot):
        return H1Model(t, (), (), (), ())
    if isinstance(t, Torus):
        return _leaf(t, ["cabling"])
    if isinstance(t, HypKnot):
        return _leaf(t, ["meridian", "base"])
    if isinstance(t, Cable):
        child = model(t.companion)
        circle = _leaf(None, ["cabling"])
        rows, err = _combine([circle, child], None)
        e = _unit(1 + child.ngens, 0)
        return H1Model(t, ("cabling",) + child.tags, rows, e, e, (1,), err)
    if isinstance(t, Sum):
        return _sum_model(t)
    if isinstance(t, HypSplice):
        return _splice_model(t)
    raise TypeError(f"not a knot tree: {t!r}")


def _sum_model(t: Sum) -> H1Model:
    parts = [model(s) for s in t.summands]
    n = len(parts)
    offsets, pos = [], 0
    for p in parts:
        offsets.append(pos)
        pos += p.ngens
    young = _young_blocks(t.summands)
    braid = mixed_braid(n, young).presentation
    braid_part = H1Model(None, ("other",) * braid.ngens, tuple(map(tuple, braid.exponent_matrix())), (), ())
    total = pos + braid.ngens

    def identifications():
        # a braid permuting isotopic summands acts by the identity identification
        for block in young:
            first = block[0] - 1
            for other in block[1:]:
                for k in range(parts[first].ngens):
                    row = [0] * total
                    row[offsets[first] + k] += 1
                    row[offsets[other - 1] + k] -= 1
                    yield row

    rows, err = _combine(parts + [braid_part], identifications)
    gclass = [0] * total
    gcocycle = [0] * total
    for p, off in zip(parts, offsets):
        for k in range(p.ngens):
            gclass[off + k] += p.gramain_class[k]
            gcocycle[off + k] += p.gramain_cocycle[k]
    tags = tuple(tag for p in parts for tag in p.tags) + braid_part.tags
    return H1Model(t, tags, rows, tuple(gclass), tuple(gcocycle), tuple(offsets) + (pos,), err)


def _splice_model(t: HypSplice) -> H1Model:
    parts = [model(c) for c in t.children]
    head = _leaf(None, ["meridian", "base"])
    sizes = [p.ngens for p in parts]
    total = 2 + sum(sizes)
    offsets, pos = [], 2
    for s in sizes:
        offsets.append(pos)
        pos += s
    sp = _splice_monodromy(t)

    def coinvariants():
        if sp.is_identity():
            return
        phi = _fiber_matrix(sp, t.children, sizes, offsets, total)
        # (Phi - I) e_j = 0 for every generator
        for j in range(2, total):
            row = [phi[i][j] - int(i == j) for i in range(total)]
            if any(row):
                yield row

    rows, err = _combine([head] + parts, coinvariants)
    tags = head.tags + tuple(tag for p in parts for tag in p.tags)
    e = _unit(total, 0)
    return H1Model(t, tags, rows, e, e, tuple(offsets), err)


def monodromy_matrix(t: HypSplice) -> IntMatrix:
    """Integer matrix of the A_f generator on the fibre part of the H_1 model of canonical ``t``."""
    m = model(t)
    sizes = [model(c).ngens for c in t.children]
    sp = _splice_monodromy(t)
    total = m.ngens
    phi = _fiber_matrix(sp, t.children, sizes, list(m.offsets), total)
    return IntMatrix([r[2:] for r in phi[2:]], total - 2)


# -- inversion -------------------------------------------------------------------

def _positive_lift(tau: tuple[int, ...]) -> tuple:
    """A positive braid whose permutation (in the ``braid_perm`` convention) is ``tau``."""
    n = len(tau)
    at = list(range(1, n + 1))
    target = [0] * n
    for a, p in enumerate(tau, start=1):
        target[p - 1] = a
    word = []
    for k in range(n):
        q = at.index(target[k])
        for i in range(q, k, -1):
            at[i - 1], at[i] = at[i], at[i - 1]
            word.append(i)
    return tuple(word)


def _mirror(word, n: int) -> tuple:
    # reflection of the plane: strand order reversed, crossings changed
    return tuple(-(n - abs(x)) if x > 0 else (n - abs(x)) for x in word)


@lru_cache(maxsize=4096)
def inversion_matrix(t: KnotTree) -> IntMatrix:
    """Map on H_1 induced by inverting orientation, from the model of ``t`` to that of ``invert_canonical(t)``."""
    if isinstance(t, Unknot):
        return IntMatrix.zeros(0, 0)
    if isinstance(t, Torus):
        return IntMatrix([[-1]])
    if isinstance(t, HypKnot):
        return IntMatrix([[-1, 0], [0, -1]])
    if isinstance(t, Cable):
        return block_diag(IntMatrix([[-1]]), inversion_matrix(t.companion))
    if isinstance(t, Sum):
        return _sum_inversion(t)
    if isinstance(t, HypSplice):
        return _splice_inversion(t)
    raise TypeError(f"not a knot tree: {t!r}")


def _splice_inversion(t: HypSplice) -> IntMatrix:
    iota = t.kgl.inversion
    if iota is None:
        raise NonConcreteAction(f"KGL {t.kgl.name} has no inversion datum; its inverse is only formal")
    flipped = tuple(iota.act(t.children, invert_canonical))
    _, j = splice_orbit_min(t.kgl, flipped)
    tau = t.kgl.rho(j) * iota
    src = model(t)
    total = src.ngens
    sizes = [model(c).ngens for c in t.children]
    dst = model(invert_canonical(t))
    out = _fiber_matrix(tau, t.children, sizes, list(src.offsets), total, list(dst.offsets))
    out[0][0] = -1
    out[1][1] = -1
    return IntMatrix(out, total)


def _sum_inversion(t: Sum) -> IntMatrix:
    target = invert_canonical(t)
    src, dst = model(t), model(target)
    n = len(t.summands)
    inverted = [invert_canonical(s) for s in t.summands]
    # stable matching of each inverted summand to a slot of the target
    free = {}
    for k, s in enumerate(target.summands):
        free.setdefault(s, []).append(k)
    pi = [free[s].pop(0) for s in inverted]
    total = src.ngens
    out = [[0] * total for _ in range(dst.ngens)]
    for i, s in enumerate(t.summands):
        block = inversion_matrix(s)
        r0, c0 = dst.offsets[pi[i]], src.offsets[i]
        for r in range(block.nrows):
            for c in range(block.ncols):
                out[r0 + r][c0 + c] = block.rows[r][c]
    # braid part: mirror reflection, then conjugation matching the relabeling
    young_src = _young_blocks(t.summands)
    young_dst = _young_blocks(target.summands)
    hb, hb_dst = mixed_braid(n, young_src), mixed_braid(n, young_dst)
    w0 = tuple(n - a + 1 for a in range(1, n + 1))
    tau = tuple(pi[w0[a] - 1] + 1 for a in range(n))  # tau = pi o w0
    beta = _positive_lift(tau)
    assert braid_perm(beta, n) == tau
    b0, b1 = src.offsets[-1], dst.offsets[-1]
    for g, image in enumerate(hb.generator_images):
        psi = free_reduce(word_inverse(beta) + _mirror(image, n) + beta)
        if not hb_dst.contains(psi):
            raise AssertionError("mirrored braid left the mixed braid group")
        for r, a in enumerate(hb_dst.ab_vector(psi)):
            out[b1 + r][b0 + g] = a
    return IntMatrix(out, total)


def I_star(tree: KnotTree) -> IntMatrix:
    """Matrix of the inversion on H_1 of the component of an invertible knot."""
    t = canonical_form(normalize(tree))
    if not is_invertible(t):
        raise NotInvertible("the knot is not invertible; inversion does not preserve its component")
    return inversion_matrix(t)


# -- H_1 ---------------------------------------------------------------------------

def h1_presentation(tree: KnotTree) -> AbelianPresentation:
    return model(canonical_form(normalize(tree))).pres


def h1(e, tree: Optional[KnotTree] = None) -> H1Result:
    """H_1 of a component, from its tree or from a homotopy expression.

    ``h1(tree)`` and ``h1(expr, tree)`` use the tree; ``h1(expr)`` works from
    the expression alone and raises ``NonConcreteAction`` when a monodromy
    flips a slot, since the inversion map is not determined by the expression.
    """
    if tree is None and isinstance(e, KNOT_TYPES):
        tree, e = e, None
    if tree is not None:
        if e is not None and e != simplify(homotopy_type(tree)):
            raise ValueError("expression does not match the tree")
        return h1_presentation(tree).structure()
    return _expr_presentation(e).structure()


def _expr_presentation(e: HomotopyExpr) -> AbelianPresentation:
    if isinstance(e, Point):
        return AbelianPresentation(0)
    if isinstance(e, Circle):
        tag = {"base_L0": "base", "plain": "other"}.get(e.label, e.label)
        return AbelianPresentation.free(1, tag)
    if isinstance(e, Product):
        return AbelianPresentation.direct_sum([_expr_presentation(f) for f in e.factors])
    if isinstance(e, Config2ModYoung):
        parts = [_expr_presentation(f) for f in e.factors]
        braid = mixed_braid(e.n, e.young).presentation
        pres = AbelianPresentation.direct_sum(parts + [braid.abelian_presentation()])
        rows = []
        offsets = [sum(p.ngens for p in parts[:i]) for i in range(len(parts))]
        for block in e.young:
            for other in block[1:]:
                for k in range(parts[block[0] - 1].ngens):
                    row = [0] * pres.ngens
                    row[offsets[block[0] - 1] + k] += 1
                    row[offsets[other - 1] + k] -= 1
                    rows.append(row)
        return pres.with_relations(rows)
    if isinstance(e, TwistedProduct):
        sp = e.monodromy.sp
        if any(s < 0 for s in sp.signs):
            raise NonConcreteAction("a sign-flipped monodromy needs the knot tree to act on H_1")
        parts = [_expr_presentation(f) for f in e.fibers]
        base = AbelianPresentation.free(1, "base")
        pres = AbelianPresentation.direct_sum(parts + [base])
        offsets = [sum(p.ngens for p in parts[:i]) for i in range(len(parts))]
        rows = []
        for i, img in enumerate(sp.images):
            j = abs(img) - 1
            for k in range(parts[i].ngens):
                row = [0] * pres.ngens
                row[offsets[j] + k] += 1
                row[offsets[i] + k] -= 1
                if any(row):
                    rows.append(row)
        return pres.with_relations(rows)
    raise TypeError(f"not a homotopy expression: {e!r}")


# -- Gramain -----------------------------------------------------------------------

def gramain_class(tree: KnotTree) -> tuple:
    """Image of the Gramain element (rotation about the long axis) in the H_1 model coordinates."""
    return model(canonical_form(normalize(tree))).gramain_class


def gramain_cocycle(tree: KnotTree) -> tuple:
    """Degree-counting cocycle on the H_1 model generators; vanishes on every relation."""
    return model(canonical_form(normalize(tree))).gramain_cocycle


def gramain_pairing(tree: KnotTree) -> int:
    m = model(canonical_form(normalize(tree)))
    return sum(a * b for a, b in zip(m.gramain_cocycle, m.gramain_class))
