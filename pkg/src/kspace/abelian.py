"""Finitely generated abelian groups given by generators and relation rows.

A presentation is ``Z^k / L`` with ``L`` spanned by integer relation rows.
Large presentations (coinvariants of big fibre products, abelianized mixed
braid groups) are first shrunk by eliminating generators that occur with
coefficient ±1 in some relation; that step is an isomorphism, so the Smith
form of what remains gives the same group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .intmatrix import IntMatrix, snf_with_inverse

TAGS = ("meridian", "cabling", "base", "other")


@dataclass(frozen=True)
class H1Result:
    free_rank: int
    torsion: tuple = ()
    # role of each free generator; metadata only
    basis_tags: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        object.__setattr__(self, "basis_tags", tuple(self.basis_tags))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion factors must be >= 2, got {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    def __str__(self):
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def direct_sum(self, other: H1Result) -> H1Result:
        """Sum of two results, recombining the torsion into a divisibility chain."""
        diag = list(self.torsion) + list(other.torsion)
        pres = AbelianPresentation(len(diag), [[d if i == j else 0 for j in range(len(diag))]
                                               for i, d in enumerate(diag)])
        t = pres.structure().torsion
        return H1Result(self.free_rank + other.free_rank, t, self.basis_tags + other.basis_tags)


def _sparse_eliminate(ngens: int, rows: Iterable[Sequence[int]]):
    """Eliminate generators with a unit coefficient in some relation.

    Returns ``(kept, exprs, residual)``: the surviving generator indices, for
    every original generator its value as a dict over surviving generators,
    and the remaining relations as dicts.
    """
    rel: dict[int, dict[int, int]] = {}
    where: dict[int, set[int]] = {g: set() for g in range(ngens)}
    for rid, row in enumerate(rows):
        d = {g: c for g, c in enumerate(row) if c}
        if d:
            rel[rid] = d
            for g in d:
                where[g].add(rid)

    subst: dict[int, dict[int, int]] = {}
    order: list[int] = []
    progress = True
    while progress:
        progress = False
        # one pass over the current relations, shortest first
        for rid in sorted(rel, key=lambda r: (len(rel[r]), r)):
            row = rel.get(rid)
            if row is None:
                continue
            g = next((h for h in sorted(row) if abs(row[h]) == 1), None)
            if g is None:
                continue
            progress = True
            del rel[rid]
            for h in row:
                where[h].discard(rid)
            c = row[g]
            # x_g = -c * sum_{h != g} row[h] x_h
            subst[g] = {h: -c * a for h, a in row.items() if h != g}
            order.append(g)
            for sid in list(where[g]):
                srow = rel[sid]
                factor = srow[g] * c
                for h, a in row.items():
                    new = srow.get(h, 0) - factor * a
                    if new:
                        if h not in srow:
                            where[h].add(sid)
                        srow[h] = new
                    elif h in srow:
                        del srow[h]
                        where[h].discard(sid)
                if not srow:
                    del rel[sid]
            where[g] = set()

    # resolve substitutions back to front; later eliminations are already resolved
    resolved: dict[int, dict[int, int]] = {}
    for g in reversed(order):
        out: dict[int, int] = {}
        for h, a in subst[g].items():
            for k, b in resolved.get(h, {h: 1}).items():
                out[k] = out.get(k, 0) + a * b
        resolved[g] = {k: v for k, v in out.items() if v}
    kept = [g for g in range(ngens) if g not in resolved]
    exprs = [resolved.get(g, {g: 1}) for g in range(ngens)]
    return kept, exprs, list(rel.values())


class AbelianPresentation:
    """``Z^ngens`` modulo the span of ``relations``; vectors are generator coordinates."""

    def __init__(self, ngens: int, relations: Iterable[Sequence[int]] = (), tags: Sequence[str] | None = None):
        self.ngens = ngens
        self.relations = [tuple(int(x) for x in r) for r in relations]
        if any(len(r) != ngens for r in self.relations):
            raise ValueError("relation length does not match the number of generators")
        self.tags = list(tags) if tags is not None else ["other"] * ngens
        if len(self.tags) != ngens:
            raise ValueError("one tag per generator")

    @classmethod
    def free(cls, ngens: int, tag: str = "other") -> AbelianPresentation:
        return cls(ngens, (), [tag] * ngens)

    @classmethod
    def direct_sum(cls, parts: Sequence[AbelianPresentation]) -> AbelianPresentation:
        total = sum(p.ngens for p in parts)
        rows, tags, offset = [], [], 0
        for p in parts:
            for r in p.relations:
                rows.append((0,) * offset + r + (0,) * (total - offset - p.ngens))
            tags.extend(p.tags)
            offset += p.ngens
        return cls(total, rows, tags)

    def with_relations(self, rows: Iterable[Sequence[int]]) -> AbelianPresentation:
        return AbelianPresentation(self.ngens, self.relations + [tuple(r) for r in rows], self.tags)

    def relation_matrix(self) -> IntMatrix:
        return IntMatrix(self.relations, self.ngens)

    # -- reduction ----------------------------------------------------------------

    @cached_property
    def _reduced(self):
        kept, exprs, residual = _sparse_eliminate(self.ngens, self.relations)
        pos = {g: i for i, g in enumerate(kept)}
        k = len(kept)
        rows = []
        for d in residual:
            row = [0] * k
            for g, a in d.items():
                row[pos[g]] = a
            rows.append(row)
        _, D, V, Vinv = snf_with_inverse(IntMatrix(rows, k))
        diag = [x for x in D.diagonal() if x]
        return kept, pos, exprs, V, Vinv, diag

    def _project(self, v: Sequence[int]) -> list[int]:
        kept, pos, exprs, V, _, _ = self._reduced
        w = [0] * len(kept)
        for g, a in enumerate(v):
            if a:
                for h, b in exprs[g].items():
                    w[pos[h]] += a * b
        return w

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Normal form of the class of ``v``: torsion parts reduced, free parts exact.

        Two vectors define the same element iff their coordinates agree.
        """
        if len(v) != self.ngens:
            raise ValueError("vector length does not match the number of generators")
        _, _, _, V, _, diag = self._reduced
        w = self._project(v)
        out = []
        for j in range(V.ncols):
            x = sum(w[i] * V.rows[i][j] for i in range(len(w)) if w[i])
            if j >= len(diag):
                out.append(x)
            elif diag[j] > 1:
                out.append(x % diag[j])
        return tuple(out)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.coordinates(v))

    def equal_maps(self, A: IntMatrix, B: IntMatrix) -> bool:
        """Whether two endomorphisms (matrices acting on columns) agree on the group."""
        diff = A - B
        return all(self.is_zero([diff.rows[i][j] for i in range(self.ngens)]) for j in range(self.ngens))

    def preserves_relations(self, A: IntMatrix) -> bool:
        """Whether ``A`` descends to an endomorphism of the group."""
        return all(self.is_zero(A.apply(r)) for r in self.relations)

    def structure(self) -> H1Result:
        kept, _, _, _, Vinv, diag = self._reduced
        torsion = tuple(d for d in diag if d > 1)
        free_tags = []
        for j in range(len(diag), len(kept)):
            support = {self.tags[kept[i]] for i, a in enumerate(Vinv.rows[j]) if a}
            tag = support.pop() if len(support) == 1 else "other"
            free_tags.append(tag if tag in TAGS else "other")
        # roles are listed in a fixed order; the free basis itself is not canonical
        free_tags.sort(key=TAGS.index)
        return H1Result(len(kept) - len(diag), torsion, tuple(free_tags))
