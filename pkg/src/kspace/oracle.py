"""Brute-force reference computations.

Nothing here calls the Smith-form or coset-enumeration code; the duplication
is deliberate so the two paths can be checked against each other.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .abelian import H1Result
from .errors import LimitExceeded, NotFiniteOrder
from .fpgroup import FpGroup


def _as_lists(A) -> list[list[int]]:
    rows = A.rows if hasattr(A, "rows") else A
    return [[int(x) for x in r] for r in rows]


@dataclass
class NaiveAbelianization:
    """Relator exponent-sum matrix and the pivots found while reducing it."""

    matrix: list
    trace: list

    @property
    def invariant_factors(self) -> list[int]:
        return _chain([abs(p) for p in self.trace])


def _chain(diag: list[int]) -> list[int]:
    # pairwise gcd/lcm turns any diagonal into a divisibility chain
    d = sorted(x for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


def naive_reduce(A) -> NaiveAbelianization:
    a = _as_lists(A)
    original = [r[:] for r in a]
    trace = []
    while a and a[0]:
        entries = [(abs(x), i, j) for i, r in enumerate(a) for j, x in enumerate(r) if x]
        if not entries:
            break
        _, i, j = min(entries)
        a[0], a[i] = a[i], a[0]
        for r in a:
            r[0], r[j] = r[j], r[0]
        while True:
            clean = True
            for i in range(1, len(a)):
                q = a[i][0] // a[0][0]
                a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                if a[i][0]:
                    clean = False
            for j in range(1, len(a[0])):
                q = a[0][j] // a[0][0]
                for r in a:
                    r[j] -= q * r[0]
                if a[0][j]:
                    clean = False
            if clean:
                break
            # a smaller remainder exists: make it the pivot and go again
            rest = [(abs(a[i][0]), i, 0) for i in range(1, len(a)) if a[i][0]]
            rest += [(abs(a[0][j]), 0, j) for j in range(1, len(a[0])) if a[0][j]]
            _, i, j = min(rest)
            if i:
                a[0], a[i] = a[i], a[0]
            else:
                for r in a:
                    r[0], r[j] = r[j], r[0]
        trace.append(a[0][0])
        a = [r[1:] for r in a[1:]]
    return NaiveAbelianization(original, trace)


def naive_invariant_factors(A) -> list[int]:
    """Non-zero invariant factors (units included) by gcd pivoting and gcd/lcm fix-up."""
    return naive_reduce(A).invariant_factors


def _det(m: list[list[int]]) -> int:
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return int(det)


def determinantal_factors(A) -> list[int]:
    """Invariant factors as quotients of gcds of k x k minors; for small matrices only."""
    a = _as_lists(A)
    m = len(a)
    n = len(a[0]) if a else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[a[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def coinvariants_bruteforce(M, m: int) -> H1Result:
    """``coker(M - I)`` for ``M`` of order dividing ``m``."""
    M = _as_lists(M)
    n = len(M)
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    power = eye
    for _ in range(m):
        power = _matmul(power, M)
    if power != eye:
        raise NotFiniteOrder(f"M^{m} is not the identity")
    # relations are the columns of M - I
    rels = [[M[j][i] - eye[j][i] for j in range(n)] for i in range(n)]
    factors = naive_invariant_factors(rels) if n else []
    torsion = [d for d in factors if d > 1]
    det = _det([[M[i][j] - eye[i][j] for j in range(n)] for i in range(n)]) if n else 1
    if det:
        prod = 1
        for d in torsion:
            prod *= d
        if prod != abs(det):
            raise AssertionError(f"torsion order {prod} != |det(M - I)| = {abs(det)}")
    return H1Result(n - len(factors), tuple(torsion))


@dataclass(frozen=True)
class PermRep:
    """Images of the group generators in Σ_n and the blocks whose stabilizer is the subgroup."""

    perms: tuple
    young: tuple


def braid_perm_rep(n: int, young) -> PermRep:
    perms = []
    for i in range(1, n):
        p = list(range(1, n + 1))
        p[i - 1], p[i] = i + 1, i
        perms.append(tuple(p))
    return PermRep(tuple(perms), tuple(tuple(b) for b in young))


def _compose_word(word, perms, n):
    img = list(range(1, n + 1))
    for x in word:
        p = perms[abs(x) - 1]
        if x < 0:
            inv = [0] * n
            for i, v in enumerate(p):
                inv[v - 1] = i + 1
            p = inv
        img = [p[v - 1] for v in img]
    return img


def coset_count_check(group: FpGroup, subgroup_perm_rep: PermRep, limit: int = 720) -> int:
    """Orbit size of the block colouring under the generators' permutations.

    The relators are checked to map to the identity first.
    """
    rep = subgroup_perm_rep
    n = len(rep.perms[0]) if rep.perms else sum(len(b) for b in rep.young)
    if len(rep.perms) != group.ngens:
        raise ValueError("one permutation per generator")
    for r in group.relators:
        if _compose_word(r, rep.perms, n) != list(range(1, n + 1)):
            raise ValueError(f"relator {r} does not map to the identity")
    colour = [0] * n
    for k, block in enumerate(rep.young):
        for i in block:
            colour[i - 1] = k
    start = tuple(colour)
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for p in rep.perms:
            new = [0] * n
            for i, v in enumerate(p):
                new[v - 1] = c[i]
            new = tuple(new)
            if new not in seen:
                if len(seen) >= limit:
                    raise LimitExceeded(f"more than {limit} cosets")
                seen.add(new)
                queue.append(new)
    return len(seen)
