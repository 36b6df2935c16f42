"""Cross-checks of the Smith-form path against the brute-force oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .intmatrix import IntMatrix, snf
from .oracle import naive_invariant_factors

RANDOM_SEED = 0
RANDOM_COUNT = 500
MAX_SIZE = 8
ENTRY_RANGE = 9


def snf_contract_holds(A: IntMatrix) -> bool:
    """``U A V = D``, ``det U, det V = ±1``, ``D`` diagonal, non-negative, with a divisibility chain."""
    U, D, V = snf(A)
    if U @ A @ V != D or not D.is_diagonal():
        return False
    if abs(U.det()) != 1 or abs(V.det()) != 1:
        return False
    diag = D.diagonal()
    if any(d < 0 for d in diag):
        return False
    return all((b % a == 0) if a else b == 0 for a, b in zip(diag, diag[1:]))


def factors_agree(A: IntMatrix) -> bool:
    _, D, _ = snf(A)
    return [d for d in D.diagonal() if d] == naive_invariant_factors(A)


def random_matrices(count: int = RANDOM_COUNT, seed: int = RANDOM_SEED):
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, MAX_SIZE), rng.randint(1, MAX_SIZE)
        yield IntMatrix([[rng.randint(-ENTRY_RANGE, ENTRY_RANGE) for _ in range(n)] for _ in range(m)], n)


@dataclass
class VerifyReport:
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "mismatches": len(self.mismatches)}


def verify_matrix(A: IntMatrix, label: str, report: VerifyReport):
    report.checked += 1
    if not snf_contract_holds(A):
        report.mismatches.append(f"{label}: Smith form contract fails")
    elif not factors_agree(A):
        report.mismatches.append(f"{label}: invariant factors differ from the oracle")


def verify_h1(pres, result, count: int = RANDOM_COUNT) -> VerifyReport:
    """Check the relation matrix of ``pres`` and ``count`` seeded random matrices.

    ``result`` is the H_1 computed by the fast path; it must agree with the
    oracle's reading of the full relation matrix.
    """
    report = VerifyReport()
    M = pres.relation_matrix()
    verify_matrix(M, "relation matrix", report)
    factors = naive_invariant_factors(M) if M.nrows else []
    rank = pres.ngens - len(factors)
    torsion = tuple(d for d in factors if d > 1)
    if (rank, torsion) != (result.free_rank, result.torsion):
        report.mismatches.append(
            f"H_1 is Z^{result.free_rank} + torsion {result.torsion}, oracle gives Z^{rank} + torsion {torsion}")
    for k, A in enumerate(random_matrices(count)):
        verify_matrix(A, f"random matrix {k}", report)
    return report
