"""Braid groups and the mixed braid groups B_n^{Σ_f}.

``B_n^{Σ_f}`` is the preimage of a Young subgroup under ``B_n -> Σ_n``.  Its
presentation comes from coset enumeration of the subgroup generated by the
pure braid generators and lifts of transpositions inside blocks, followed by
Reidemeister-Schreier rewriting.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import Sequence

from .coset import DEFAULT_COSET_LIMIT, SchreierPresentation, reidemeister_schreier, todd_coxeter
from .errors import IndexTooLarge
from .fpgroup import FpGroup, Word, exponent_sums, free_reduce, word_inverse

MAX_STRANDS = 6


def braid_presentation(n: int) -> FpGroup:
    """Artin presentation of ``B_n`` on ``s1 .. s(n-1)``."""
    if n < 1:
        raise ValueError("braid groups need n >= 1")
    rels = []
    for i in range(1, n - 1):
        j = i + 1
        rels.append((i, j, i, -j, -i, -j))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((i, j, -i, -j))
    return FpGroup(tuple(f"s{i}" for i in range(1, n)), tuple(rels))


def braid_perm(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Underlying permutation: ``p[i-1]`` is the final position of the strand starting at ``i``."""
    pos = list(range(1, n + 1))
    at = list(range(1, n + 1))  # at[k-1] = strand currently at position k
    for x in word:
        i = abs(x)
        a, b = at[i - 1], at[i]
        at[i - 1], at[i] = b, a
        pos[a - 1], pos[b - 1] = i + 1, i
    return tuple(pos)


def pure_generator(i: int, j: int) -> Word:
    """``A_ij`` for ``i < j``: strand ``j`` goes once around strand ``i``."""
    head = tuple(range(j - 1, i, -1))
    return free_reduce(head + (i, i) + word_inverse(head))


def transposition_lift(i: int, j: int) -> Word:
    """A braid whose permutation is the transposition ``(i j)``, ``i < j``."""
    head = tuple(range(j - 1, i, -1))
    return free_reduce(head + (i,) + word_inverse(head))


def normalize_young(n: int, young) -> tuple[tuple[int, ...], ...]:
    blocks = tuple(sorted(tuple(sorted(b)) for b in young))
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(1, n + 1)):
        raise ValueError(f"{young} is not a partition of 1..{n}")
    return blocks


def young_index(n: int, young) -> int:
    return factorial(n) // prod(factorial(len(b)) for b in young)


def young_generators(n: int, young) -> list[Word]:
    gens = [pure_generator(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for b in young:
        gens.extend(transposition_lift(b[0], j) for j in b[1:])
    return gens


class MixedBraidGroup:
    """``B_n^{Σ_f}`` with its presentation and rewriting process."""

    def __init__(self, n: int, young, limit: int = DEFAULT_COSET_LIMIT):
        if n < 1:
            raise ValueError("mixed braid groups need n >= 1")
        self.n = n
        self.young = normalize_young(n, young)
        self.expected_index = young_index(n, self.young)
        if self.expected_index > limit:
            raise IndexTooLarge(f"index {self.expected_index} of B_{n}^Σ_f exceeds the coset limit {limit}")
        self.parent = braid_presentation(n)
        self.table = todd_coxeter(self.parent, young_generators(n, self.young), limit)
        if self.table.index != self.expected_index:
            raise AssertionError(f"coset count {self.table.index} != [Σ_n:Σ_f] = {self.expected_index}")
        self._schreier: SchreierPresentation = reidemeister_schreier(self.parent, self.table)
        self.presentation: FpGroup = self._schreier.group
        self.generator_images: list[Word] = self._schreier.images

    @property
    def coset_count(self) -> int:
        return self.table.index

    def contains(self, word: Sequence[int]) -> bool:
        return self.table.act(0, word) == 0

    def rewrite(self, word: Sequence[int]) -> Word:
        return self._schreier.rewrite(word)

    def ab_vector(self, word: Sequence[int]) -> list[int]:
        """Exponent sums of ``word`` (a braid in the subgroup) over the subgroup generators."""
        return exponent_sums(self.rewrite(word), self.presentation.ngens)

    def perm(self, word: Sequence[int]) -> tuple[int, ...]:
        return braid_perm(word, self.n)


@lru_cache(maxsize=64)
def _cached(n: int, young: tuple) -> MixedBraidGroup:
    return MixedBraidGroup(n, young)


def mixed_braid(n: int, young) -> MixedBraidGroup:
    """Shared ``MixedBraidGroup`` for ``(n, young)``; objects are read-only after construction."""
    if n > MAX_STRANDS:
        raise IndexTooLarge(f"mixed braid groups are supported for n <= {MAX_STRANDS}, got {n}")
    return _cached(n, normalize_young(n, young))


def mixed_braid_group(n: int, young) -> FpGroup:
    """Presentation of the preimage of the Young subgroup ``young`` in ``B_n``."""
    return mixed_braid(n, young).presentation
