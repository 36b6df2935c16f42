"""Signed permutations: the hyperoctahedral group {±1}^n ⋊ S_n.

An element is stored as the tuple of signed images of 1..n, so ``images[i-1]``
is ``±j`` when the element sends letter ``i`` to letter ``j`` with that sign.
Signed letters are handled by linearity: the image of ``-i`` is minus the
image of ``i``.

Text notation follows the usual signed-cycle convention: ``(a1 a2 ... ak ±)``
sends ``a1 -> a2 -> ... -> ak -> ±a1``.  Tokens inside a cycle may themselves
be negative, which is needed to write every element; the printer always starts
a cycle at its smallest letter with a positive sign, so the printed form of an
element is unique.  Disjoint cycles are juxtaposed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence, TypeVar

from .errors import SizeMismatch

T = TypeVar("T")

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class SignedPerm:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if sorted(abs(x) for x in images) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation: {images}")

    # -- construction ---------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[tuple[Sequence[int], int]], n: int | None = None) -> SignedPerm:
        """Build from ``[(tokens, sign), ...]`` where sign is +1 or -1."""
        cycles = [(list(tokens), sign) for tokens, sign in cycles]
        letters = [abs(t) for tokens, _ in cycles for t in tokens]
        if any(t == 0 for t in letters):
            raise ValueError("letter 0 in signed cycle")
        if len(set(letters)) != len(letters):
            raise ValueError("signed cycles are not disjoint")
        if n is None:
            n = max(letters, default=0)
        if letters and max(letters) > n:
            raise ValueError(f"letter {max(letters)} out of range 1..{n}")
        images = list(range(1, n + 1))
        for tokens, sign in cycles:
            if sign not in (1, -1):
                raise ValueError(f"bad cycle sign {sign!r}")
            k = len(tokens)
            for j, x in enumerate(tokens):
                y = tokens[j + 1] if j + 1 < k else sign * tokens[0]
                # x -> y, so |x| -> sign(x) * y
                images[abs(x) - 1] = y if x > 0 else -y
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> SignedPerm:
        """Parse juxtaposed signed cycles such as ``"(1 2 -)(3 -)"``."""
        stripped = text.strip()
        pos = 0
        cycles = []
        for m in _CYCLE_RE.finditer(stripped):
            if stripped[pos:m.start()].strip():
                raise ValueError(f"unexpected text in signed cycles: {text!r}")
            pos = m.end()
            tokens = m.group(1).split()
            sign = 1
            if tokens and tokens[-1] in ("+", "-"):
                sign = -1 if tokens.pop() == "-" else 1
            if not tokens and sign == -1:
                raise ValueError(f"empty cycle with sign: {text!r}")
            try:
                cycles.append(([int(t) for t in tokens], sign))
            except ValueError:
                raise ValueError(f"bad token in signed cycles: {text!r}") from None
        if stripped[pos:].strip() or (not cycles and stripped):
            raise ValueError(f"unexpected text in signed cycles: {text!r}")
        return cls.from_cycles([c for c in cycles if c[0]], n)

    # -- basic accessors --------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Signed image of a signed letter."""
        if i > 0:
            return self.images[i - 1]
        return -self.images[-i - 1]

    @property
    def perm(self) -> tuple[int, ...]:
        """Unsigned part, as images of 1..n."""
        return tuple(abs(x) for x in self.images)

    @property
    def signs(self) -> tuple[int, ...]:
        """``signs[i-1]`` is the sign carried by letter i on its way to its target."""
        return tuple(1 if x > 0 else -1 for x in self.images)

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    # -- group law ----------------------------------------------------------

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        """``a * b`` applies ``b`` first, then ``a``."""
        if self.n != other.n:
            raise SizeMismatch(f"signed permutations on {self.n} and {other.n} letters")
        return SignedPerm(tuple(self(x) for x in other.images))

    def inverse(self) -> SignedPerm:
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return SignedPerm(tuple(inv))

    def __pow__(self, k: int) -> SignedPerm:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = SignedPerm.identity(self.n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def order(self) -> int:
        # a signed cycle of length k has order k or 2k
        total = 1
        for tokens, sign in self.cycles():
            total = lcm(total, len(tokens) * (2 if sign < 0 else 1))
        return total

    def conjugate(self, by: SignedPerm) -> SignedPerm:
        """``by * self * by^-1``."""
        return by * self * by.inverse()

    # -- action on tuples ---------------------------------------------------

    def act(self, items: Sequence[T], invert) -> list[T]:
        """Move ``items[i-1]`` to slot ``|self(i)|``, applying ``invert`` when the sign is -.

        This is the action of the signed symmetric group on n-tuples of knot
        classes: permutation of factors combined with knot inversion.
        """
        if len(items) != self.n:
            raise SizeMismatch(f"{self.n}-letter signed permutation acting on {len(items)} items")
        out: list = [None] * self.n
        for i, x in enumerate(self.images):
            out[abs(x) - 1] = items[i] if x > 0 else invert(items[i])
        return out

    # -- notation -----------------------------------------------------------

    def cycles(self) -> list[tuple[tuple[int, ...], int]]:
        """Canonical signed-cycle decomposition, fixed points included."""
        seen = set()
        out = []
        for a in range(1, self.n + 1):
            if a in seen:
                continue
            seq = [a]
            seen.add(a)
            cur = self(a)
            while abs(cur) != a:
                seq.append(cur)
                seen.add(abs(cur))
                cur = self(cur)
            out.append((tuple(seq), 1 if cur == a else -1))
        return out

    def __str__(self) -> str:
        parts = []
        for tokens, sign in self.cycles():
            if len(tokens) == 1 and sign == 1:
                continue
            body = " ".join(str(t) for t in tokens)
            parts.append(f"({body} -)" if sign < 0 else f"({body})")
        if parts:
            return "".join(parts)
        return "(1)" if self.n else "()"

    def __repr__(self) -> str:
        return f"SignedPerm({str(self)!r}, n={self.n})"


def sp_compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    return a * b


def sp_inverse(a: SignedPerm) -> SignedPerm:
    return a.inverse()


def sp_order(a: SignedPerm) -> int:
    return a.order()
