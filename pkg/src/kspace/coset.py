"""Todd-Coxeter coset enumeration (HLT strategy) and Reidemeister-Schreier.

Columns of a coset table are indexed ``2*(g-1)`` for generator ``g`` and
``2*(g-1)+1`` for its inverse.  Every call builds its own tables.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import IndexTooLarge
from .fpgroup import FpGroup, Word, cyclic_reduce, free_reduce, word_inverse

DEFAULT_COSET_LIMIT = 10_000


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def _letter(col: int) -> int:
    g = col // 2 + 1
    return g if col % 2 == 0 else -g


class _Enumerator:
    def __init__(self, ngens: int, limit: int):
        self.width = 2 * ngens
        self.limit = limit
        self.table: list[list] = [[None] * self.width]
        self.parent = [0]
        self.live = 1

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int):
        if self.live >= self.limit:
            raise IndexTooLarge(f"coset enumeration exceeded {self.limit} cosets")
        new = len(self.table)
        self.table.append([None] * self.width)
        self.parent.append(new)
        self.live += 1
        self.table[c][x] = new
        self.table[new][x ^ 1] = c

    def _merge(self, a: int, b: int, queue: list):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = self.table[e]
            for x in range(self.width):
                f = row[x]
                if f is None:
                    continue
                self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, word: Sequence[int]):
        t = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table: ``table[c][col]`` is the coset reached from ``c``."""

    table: tuple

    @property
    def index(self) -> int:
        return len(self.table)

    def act(self, c: int, word: Sequence[int]) -> int:
        for x in word:
            c = self.table[c][_col(x)]
        return c


def todd_coxeter(group: FpGroup, subgroup: Sequence[Word], limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup`` words.

    Raises ``IndexTooLarge`` when more than ``limit`` cosets are live at once.
    """
    en = _Enumerator(group.ngens, limit)
    rels = [[_col(x) for x in cyclic_reduce(r)] for r in group.relators]
    rels = [r for r in rels if r]
    for w in subgroup:
        w = [_col(x) for x in free_reduce(w)]
        if w:
            en.scan_and_fill(0, w)
    c = 0
    while c < len(en.table):
        for r in rels:
            if not en.alive(c):
                break
            en.scan_and_fill(c, r)
        if en.alive(c):
            for x in range(en.width):
                if en.table[c][x] is None:
                    en.define(c, x)
        c += 1

    live = [k for k in range(len(en.table)) if en.alive(k)]
    number = {k: i for i, k in enumerate(live)}
    rows = tuple(tuple(number[en.rep(en.table[k][x])] for x in range(en.width)) for k in live)
    return CosetTable(rows)


# -- Reidemeister-Schreier ------------------------------------------------------------

@dataclass
class SchreierPresentation:
    """Presentation of a finite-index subgroup with the rewriting process.

    ``group`` is the (Tietze-simplified) subgroup presentation;
    ``images[i]`` is generator ``i+1`` as a word in the parent group.
    """

    group: FpGroup
    images: list
    table: CosetTable
    _schreier: dict
    _subst: list

    def rewrite(self, word: Sequence[int]) -> Word:
        """Express a parent-group word lying in the subgroup in subgroup generators."""
        c, raw = 0, []
        t = self.table.table
        for x in word:
            col = _col(x)
            if x > 0:
                s = self._schreier.get((c, col))
                if s:
                    raw.append(s)
                c = t[c][col]
            else:
                d = t[c][col]
                s = self._schreier.get((d, col ^ 1))
                if s:
                    raw.append(-s)
                c = d
        if c != 0:
            raise ValueError("word does not lie in the subgroup")
        out: list[int] = []
        for s in raw:
            w = self._subst[abs(s) - 1]
            out.extend(w if s > 0 else word_inverse(w))
        return free_reduce(out)


def reidemeister_schreier(group: FpGroup, table: CosetTable, simplify: bool = True) -> SchreierPresentation:
    t = table.table
    width = 2 * group.ngens
    # BFS spanning tree; transversal words
    tw: list = [None] * table.index
    tw[0] = ()
    tree = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(width):
            d = t[c][x]
            if tw[d] is None:
                tw[d] = tw[c] + (_letter(x),)
                tree.add((c, x) if x % 2 == 0 else (d, x ^ 1))
                queue.append(d)
    schreier: dict = {}
    images = []
    for c in range(table.index):
        for x in range(0, width, 2):
            if (c, x) not in tree:
                schreier[(c, x)] = len(images) + 1
                d = t[c][x]
                images.append(free_reduce(tw[c] + (_letter(x),) + word_inverse(tw[d])))
    ident = [(i + 1,) for i in range(len(images))]
    pres = SchreierPresentation(FpGroup(tuple(f"s{i + 1}" for i in range(len(images)))), images,
                                table, schreier, ident)
    relators = []
    for c in range(table.index):
        for r in group.relators:
            raw, d = [], c
            for x in r:
                col = _col(x)
                if x > 0:
                    s = schreier.get((d, col))
                    if s:
                        raw.append(s)
                    d = t[d][col]
                else:
                    e = t[d][col]
                    s = schreier.get((e, col ^ 1))
                    if s:
                        raw.append(-s)
                    d = e
            w = cyclic_reduce(raw)
            if w:
                relators.append(w)
    gens, rels, subst = list(range(1, len(images) + 1)), relators, ident
    if simplify:
        gens, rels, subst = tietze(len(images), relators)
    # renumber surviving generators 1..k
    renum = {g: i + 1 for i, g in enumerate(gens)}

    def rn(w):
        return tuple(renum[x] if x > 0 else -renum[-x] for x in w)

    images_kept = [images[g - 1] for g in gens]
    pres.group = FpGroup(tuple(f"s{i + 1}" for i in range(len(gens))), _dedupe([rn(r) for r in rels]))
    pres.images = images_kept
    pres._subst = [rn(w) for w in subst]
    return pres


def _canonical_relator(w: Word) -> Word:
    # least rotation of the word or its inverse
    cands = []
    for v in (w, word_inverse(w)):
        cands.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(cands)


def _dedupe(rels) -> tuple:
    seen, out = set(), []
    for r in rels:
        key = _canonical_relator(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return tuple(out)


def tietze(ngens: int, relators: list, max_len: int = 4):
    """Eliminate generators occurring exactly once in a short relator.

    Returns the surviving generators, the new relators and, for each original
    generator, its value as a word in the survivors.
    """
    rels: dict[int, Word] = {}
    keys: dict[Word, int] = {}
    occ: dict[int, set] = {g: set() for g in range(1, ngens + 1)}

    def add(w):
        w = cyclic_reduce(w)
        if not w:
            return
        key = _canonical_relator(w)
        if key in keys:
            return
        rid = next(ids)
        rels[rid] = w
        keys[key] = rid
        if len(w) <= max_len:
            heapq.heappush(short, (len(w), rid))
        for x in w:
            occ[abs(x)].add(rid)

    def drop(rid):
        w = rels.pop(rid)
        del keys[_canonical_relator(w)]
        for x in w:
            occ[abs(x)].discard(rid)

    # short relators not yet examined; a relator never changes under its id
    short: list = []
    ids = itertools.count()
    for r in relators:
        add(r)
    steps: list = []
    while True:
        pick = None
        while short and pick is None:
            _, rid = heapq.heappop(short)
            r = rels.get(rid)
            if r is None:
                continue
            counts: dict = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            g = next((abs(x) for x in r if counts[abs(x)] == 1), None)
            if g is not None:
                pick = (rid, g)
        if pick is None:
            break
        rid, g = pick
        r = rels[rid]
        i = next(k for k, x in enumerate(r) if abs(x) == g)
        rest = r[i + 1:] + r[:i]
        # r rotated is  x * rest = 1, so x = rest^-1
        value = word_inverse(rest) if r[i] > 0 else tuple(rest)
        drop(rid)
        for q in sorted(occ[g]):
            w = rels[q]
            drop(q)
            add(_substitute(w, g, value))
        steps.append((g, value))

    final: dict[int, Word] = {}
    for g, value in reversed(steps):
        out = []
        for y in value:
            v = final.get(abs(y), (abs(y),))
            out.extend(v if y > 0 else word_inverse(v))
        final[g] = free_reduce(out)
    gens = [g for g in range(1, ngens + 1) if g not in final]
    subst = [final.get(g, (g,)) for g in range(1, ngens + 1)]
    return gens, list(rels.values()), subst


def _substitute(w: Word, g: int, value: Word) -> Word:
    out = []
    for y in w:
        if abs(y) == g:
            out.extend(value if y > 0 else word_inverse(value))
        else:
            out.append(y)
    return free_reduce(out)
