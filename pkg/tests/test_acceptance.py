"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest -v -s tests/test_acceptance.py`` to see the lines, or
``python tests/test_acceptance.py`` for the summary alone.  Every criterion
is exact: no numeric tolerance is involved anywhere.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import tempfile

from kspace.braids import braid_presentation, mixed_braid, mixed_braid_group, young_index
from kspace.catalog import KGLS
from kspace.cli import main
from kspace.dsl import parse_knot, print_knot
from kspace.errors import NonConcreteAction
from kspace.fpgroup import abelianization
from kspace.homology import gramain_pairing, h1, h1_presentation
from kspace.homotopy import Circle, Config2ModYoung, MonodromyDatum, Point, Product, TwistedProduct, dimension, \
    homotopy_type, simplify
from kspace.knot_model import Cable, HypKnot, HypSplice, Sum, Torus, Unknot
from kspace.oracle import braid_perm_rep, coset_count_check
from kspace.signed_perm import SignedPerm
from kspace.symmetry import classes_equal, compute_Af, invert_class, is_invertible
from kspace.verify import RANDOM_COUNT, VerifyReport, random_matrices, snf_contract_holds, verify_matrix

sys.path.insert(0, os.path.dirname(__file__))
from treegen import random_trees  # noqa: E402

S1 = Circle()
FIG8 = HypKnot("fig8", True)
TREFOIL = Torus(2, 3)
K817 = HypKnot("k817", False)
BORROMEAN, WHITEHEAD = KGLS["borromean"], KGLS["whitehead"]


# lines collected for the pytest terminal summary (see conftest.py)
LINES: list[str] = []


def report(number: int, title: str, failures: list, detail: str = "") -> bool:
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} (tolerance: exact)"
    if detail:
        line += f"; {detail}"
    print(line)
    LINES.append(line)
    for f in failures[:10]:
        print(f"    {f}")
        LINES.append(f"    {f}")
    return ok


def torus_power(n):
    return Product((S1,) * n) if n > 1 else S1


def twisted(m, mono, fibers):
    return TwistedProduct(m, MonodromyDatum(SignedPerm.parse(mono, len(fibers))), fibers)


# -- criteria -------------------------------------------------------------------------

def criterion_1():
    failures = []

    def expect(label, tree, expected):
        got = simplify(homotopy_type(tree))
        if got != simplify(expected):
            failures.append(f"{label}: got {got}")

    expect("unknot", Unknot(), Point())
    expect("torus(2,3)", TREFOIL, S1)
    expect("fig8", FIG8, torus_power(2))
    tower = TREFOIL
    for n in range(2, 6):
        tower = Cable(2, 2 * n + 1, tower)
        expect(f"{n}-fold cable tower", tower, torus_power(n))

    t2 = torus_power(2)
    borromean = HypSplice(BORROMEAN, (FIG8, FIG8))
    expect("splice(borromean; fig8, fig8)", borromean, Product((S1, twisted(4, "(1 2 -)", (t2, t2)))))
    if compute_Af(BORROMEAN, (FIG8, FIG8)).order != 4:
        failures.append("A_f of the Borromean double figure-8 is not of order 4")

    mixed = HypSplice(BORROMEAN, (TREFOIL, FIG8))
    expect("splice(borromean; trefoil, fig8)", mixed, Product((S1, twisted(2, "(1 -)(2 -)", (S1, t2)))))
    if compute_Af(BORROMEAN, (TREFOIL, FIG8)).order != 2:
        failures.append("A_f of the trefoil/figure-8 variant is not of order 2")

    for j in (FIG8, TREFOIL, Cable(2, 5, FIG8)):
        kj = homotopy_type(j)
        expect(f"whitehead double of invertible {print_knot(j)}", HypSplice(WHITEHEAD, (j,)),
               Product((S1, twisted(2, "(1 -)", (kj,)))))
    for j in (K817, Sum((K817, TREFOIL)), Cable(3, 2, K817)):
        kj = homotopy_type(j)
        expect(f"whitehead double of non-invertible {print_knot(j)}", HypSplice(WHITEHEAD, (j,)),
               Product((S1, S1, kj)))

    expect("sum of 4 trefoils", Sum((TREFOIL,) * 4), Config2ModYoung(4, ((1, 2, 3, 4),), (S1,) * 4))
    return report(1, "homotopy-type regression", failures)


def criterion_2():
    failures = []
    got = dimension(simplify(homotopy_type(HypSplice(BORROMEAN, (FIG8, FIG8)))))
    if got != 6:
        failures.append(f"Borromean double figure-8: dimension {got}, expected 6")
    got2 = dimension(simplify(homotopy_type(HypSplice(BORROMEAN, (TREFOIL, FIG8)))))
    if got2 != 5:
        failures.append(f"trefoil/figure-8 variant: dimension {got2}, expected 5")
    return report(2, "dimension", failures, f"dimensions {got} and {got2}")


def criterion_3():
    failures = []
    tree = HypSplice(BORROMEAN, (FIG8, FIG8))
    result = h1(tree)
    if (result.free_rank, result.torsion) != (2, (2, 2)):
        failures.append(f"H_1 = {result}, expected Z^2 + Z/2 + Z/2")
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "borromean_fig8s.knot")
        with open(path, "w") as fh:
            fh.write(print_knot(tree) + "\n")
        out, code = _capture_main(["h1", path, "--verify", "--json"])
    doc = json.loads(out)
    verify = doc.get("verify", {})
    if code != 0:
        failures.append(f"h1 --verify exited {code}")
    if (doc.get("rank"), doc.get("torsion")) != (2, [2, 2]):
        failures.append(f"h1 --verify reported {doc}")
    if verify.get("mismatches") != 0 or verify.get("checked") != RANDOM_COUNT + 1:
        failures.append(f"verification summary {verify}")
    return report(3, "H_1 exactness with oracle cross-check", failures,
                  f"H_1 = {result}; {verify.get('checked')} matrices checked, {verify.get('mismatches')} mismatches")


def criterion_4():
    failures = []
    for label, tree, expected in (("unknot", Unknot(), 0), ("torus(2,3)", TREFOIL, 1)):
        got = gramain_pairing(tree)
        if got != expected:
            failures.append(f"{label}: pairing {got}, expected {expected}")
    primes = (TREFOIL, FIG8, Torus(2, 5), HypKnot("k52", True), Torus(3, 4), HypSplice(WHITEHEAD, (FIG8,)))
    for n in range(2, 7):
        got = gramain_pairing(Sum(primes[:n]))
        if got != n:
            failures.append(f"sum of {n} distinct primes: pairing {got}")
    zeros = [print_knot(t) for t in random_trees(4, 50) if gramain_pairing(t) == 0]
    failures.extend(f"random tree with zero pairing: {z}" for z in zeros)
    return report(4, "Gramain pairing table", failures, "n in 2..6 and 50 random trees")


def criterion_5():
    failures = []
    trees = random_trees(5, 200, depth=4)
    invertible = 0
    for t in trees:
        inv = invert_class(t)
        decided = is_invertible(t)
        invertible += decided
        if decided != classes_equal(t, inv):
            failures.append(f"is_invertible disagrees with class equality on {print_knot(t)}")
        if not classes_equal(invert_class(inv), t):
            failures.append(f"invert_class is not an involution on {print_knot(t)}")
    return report(5, "invertibility consistency", failures,
                  f"{len(trees)} trees, {invertible} invertible, {len(trees) - invertible} not")


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def criterion_6():
    failures = []
    count = 0
    for n in range(1, 6):
        for young in _set_partitions(list(range(1, n + 1))):
            count += 1
            expected = young_index(n, young)
            got = mixed_braid(n, young).coset_count
            oracle = coset_count_check(braid_presentation(n), braid_perm_rep(n, young))
            if not got == oracle == expected:
                failures.append(f"n={n} young={young}: coset count {got}, oracle {oracle}, index {expected}")
    for n in (2, 3, 4):
        ab = abelianization(mixed_braid_group(n, [[i] for i in range(1, n + 1)]))
        if (ab.free_rank, ab.torsion) != (n * (n - 1) // 2, ()):
            failures.append(f"pure braid group P_{n} abelianizes to {ab}")
    return report(6, "mixed braid groups", failures, f"{count} Young subgroups with n <= 5, P_2..P_4 ranks")


def criterion_7():
    rep = VerifyReport()
    for k, A in enumerate(random_matrices(RANDOM_COUNT, seed=0)):
        verify_matrix(A, f"random matrix {k} (seed 0)", rep)
    for k, A in enumerate(random_matrices(RANDOM_COUNT, seed=7)):
        verify_matrix(A, f"random matrix {k} (seed 7)", rep)
    trees = 0
    for t in random_trees(7, 60, depth=3):
        try:
            M = h1_presentation(t).relation_matrix()
        except NonConcreteAction:
            continue
        trees += 1
        rep.checked += 1
        if not snf_contract_holds(M):
            rep.mismatches.append(f"relation matrix of {print_knot(t)}")
    return report(7, "Smith normal form contract", rep.mismatches,
                  f"{rep.checked} matrices ({trees} from random trees)")


def _capture_main(argv):
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return buf.getvalue(), code


_CLI_RUNNER = """
import contextlib, io, sys
from kspace.cli import main
out = []
for line in sys.stdin.read().splitlines():
    argv = line.split("\\t")
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    out.append(f"{code}\\t{buf.getvalue()}")
sys.stdout.write("\\n".join(out))
"""


def criterion_8():
    failures = []
    trees = random_trees(8, 200, depth=4)
    for t in trees:
        if parse_knot(print_knot(t)) != t:
            failures.append(f"parse(print(t)) != t for {print_knot(t)}")
    commands = ("parse", "type", "pi1", "h1", "gramain", "invertible", "af", "dim")
    with tempfile.TemporaryDirectory() as d:
        lines = []
        for k, t in enumerate(trees[:12]):
            path = os.path.join(d, f"t{k}.knot")
            with open(path, "w") as fh:
                fh.write(print_knot(t))
            lines.extend("\t".join(("--json", cmd, path)) for cmd in commands)
        runs = []
        for seed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run([sys.executable, "-c", _CLI_RUNNER], input="\n".join(lines).encode(), env=env,
                                  capture_output=True, check=True)
            runs.append(proc.stdout)
        if runs[0] != runs[1]:
            failures.append("--json output differs between two runs")
    return report(8, "CLI round trip and JSON stability", failures,
                  f"{len(trees)} trees round-tripped; {len(lines)} --json invocations compared byte for byte")


# -- pytest entry points ----------------------------------------------------------------

def test_criterion_1_homotopy_types():
    assert criterion_1()


def test_criterion_2_dimension():
    assert criterion_2()


def test_criterion_3_h1_with_oracle():
    assert criterion_3()


def test_criterion_4_gramain():
    assert criterion_4()


def test_criterion_5_invertibility():
    assert criterion_5()


def test_criterion_6_mixed_braids():
    assert criterion_6()


def test_criterion_7_snf_contract():
    assert criterion_7()


def test_criterion_8_cli_round_trip():
    assert criterion_8()


if __name__ == "__main__":
    results = [c() for c in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
                             criterion_7, criterion_8)]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
