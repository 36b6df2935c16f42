"""Finitely presented groups.

Words are tuples of non-zero integers: ``g`` is the ``g``-th generator
(1-based) and ``-g`` its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import AbelianPresentation, H1Result

Word = tuple


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def word_inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    """``a b a^-1 b^-1``."""
    return free_reduce(tuple(a) + tuple(b) + word_inverse(a) + word_inverse(b))


def exponent_sums(word: Sequence[int], ngens: int) -> list[int]:
    v = [0] * ngens
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def word_to_str(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = names[abs(word[i]) - 1]
        k = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class FpGroup:
    """Generators with names and relator words."""

    gens: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        k = len(self.gens)
        for r in self.relators:
            if any(x == 0 or abs(x) > k for x in r):
                raise ValueError(f"relator {r} uses a generator outside 1..{k}")

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def exponent_matrix(self) -> list[list[int]]:
        return [exponent_sums(r, self.ngens) for r in self.relators]

    def abelian_presentation(self, tags: Sequence[str] | None = None) -> AbelianPresentation:
        return AbelianPresentation(self.ngens, self.exponent_matrix(), tags)

    def __str__(self):
        gens = ", ".join(self.gens)
        rels = ", ".join(word_to_str(r, self.gens) for r in self.relators)
        return f"⟨ {gens} | {rels} ⟩" if rels else f"⟨ {gens} | ⟩"


def abelianization(g: FpGroup) -> H1Result:
    """Free rank and invariant factors of ``g`` made abelian."""
    return g.abelian_presentation().structure()
