"""Exact integer matrices and Smith normal form with transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple
    ncols: int

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged integer matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diag(cls, entries: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> IntMatrix:
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        out = [[0] * ncols for _ in range(nrows)]
        for i, d in enumerate(entries):
            out[i][i] = d
        return cls(out, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> IntMatrix:
        return IntMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows], other.ncols)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def __pow__(self, k: int) -> IntMatrix:
        if self.nrows != self.ncols or k < 0:
            raise ValueError("only non-negative powers of square matrices")
        out = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.shape))]

    def det(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self) -> str:
        if not self.rows:
            return f"[] (0x{self.ncols})"
        width = max(len(str(x)) for r in self.rows for x in r) if self.ncols else 0
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self.rows)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = [[0] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return IntMatrix(out, ncols)


# -- Smith normal form ---------------------------------------------------------------

def _smith(a: list[list[int]], m: int, n: int, track_vinv: bool = False):
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vinv = [[int(i == j) for j in range(n)] for i in range(n)] if track_vinv else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]
        if vinv is not None:
            vinv[j], vinv[k] = vinv[k], vinv[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            ra, rs = a[dst], a[src]
            for j in range(n):
                ra[j] += q * rs[j]
            ua, us = u[dst], u[src]
            for j in range(m):
                ua[j] += q * us[j]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]
            if vinv is not None:
                vd, vs = vinv[dst], vinv[src]
                for j in range(n):
                    vs[j] -= q * vd[j]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            p = a[t][t]
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, v, vinv


def snf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: unimodular ``U``, ``V`` with ``U @ A @ V == D``.

    ``D`` is diagonal with non-negative entries and each diagonal entry
    divides the next.
    """
    m, n = A.shape
    a = A.tolist()
    u, v, _ = _smith(a, m, n)
    return IntMatrix(u, m), IntMatrix(a, n), IntMatrix(v, n)


def snf_with_inverse(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Like ``snf`` but also returns ``V^-1``."""
    m, n = A.shape
    a = A.tolist()
    u, v, vinv = _smith(a, m, n, track_vinv=True)
    return IntMatrix(u, m), IntMatrix(a, n), IntMatrix(v, n), IntMatrix(vinv, n)


def invariant_factors(A: IntMatrix) -> list[int]:
    """Non-zero diagonal entries of the Smith form, units included."""
    _, d, _ = snf(A)
    return [x for x in d.diagonal() if x]
