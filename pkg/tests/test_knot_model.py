import pytest

from kspace.catalog import KGLS, catalog_get, sakuma, stoimenow
from kspace.errors import InvalidTree, UnknownName
from kspace.knot_model import (Cable, HypKnot, HypSplice, KglDatum, Sum, Torus, Unknot, depth, normalize, validate,
                               walk)
from kspace.signed_perm import SignedPerm

FIG8 = HypKnot("fig8", True)


def test_catalog_entries():
    b = catalog_get("borromean")
    assert (b.n, b.b_order, str(b.rho_gen)) == (2, 4, "(1 2 -)")
    w = catalog_get("whitehead")
    assert (w.n, w.b_order, str(w.rho_gen)) == (1, 2, "(1 -)")
    assert catalog_get("link6_3_2").rho_gen.is_identity()
    assert catalog_get("trefoil") == Torus(2, 3)
    assert catalog_get("fig8") == FIG8
    assert str(stoimenow(4).rho_gen) == "(1 2 3 4)"
    assert stoimenow(4).b_order == 4
    assert str(sakuma(3).rho_gen) == "(1 2 3 -)"
    assert sakuma(3).b_order == 6
    assert catalog_get("stoimenow(3)") == catalog_get("stoimenow3")
    with pytest.raises(UnknownName):
        catalog_get("sakuma(2)")
    with pytest.raises(UnknownName):
        catalog_get("nothing")


def test_every_catalog_kgl_validates():
    for kgl in list(KGLS.values()) + [stoimenow(n) for n in range(1, 6)] + [sakuma(n) for n in (1, 3, 5)]:
        children = tuple(FIG8 for _ in range(kgl.n))
        assert validate(HypSplice(kgl, children)).ok


@pytest.mark.parametrize("tree,code", [
    (Torus(2, 4), "torus-gcd"),
    (Torus(1, 5), "torus-trivial"),
    (Cable(2, 4, FIG8), "cable-gcd"),
    (Sum((FIG8,)), "sum-length"),
    (Sum((FIG8, Unknot())), "unknot-summand"),
    (Sum((FIG8, Sum((FIG8, FIG8)))), "nested-sum"),
    (HypSplice(KGLS["borromean"], (FIG8,)), "children-length"),
    (HypSplice(KGLS["whitehead"], (Unknot(),)), "unknot-child"),
    (HypSplice(KGLS["whitehead"], (FIG8,), True), "inverse-marker"),
    (HypKnot("f-8", True), "name"),
])
def test_violations(tree, code):
    assert code in validate(tree).codes()


def test_kgl_checks():
    bad_order = KglDatum("x", 2, 2, SignedPerm.parse("(1 2 -)", 2))
    assert "kgl-rho-order" in validate(HypSplice(bad_order, (FIG8, FIG8))).codes()
    bad_inv = KglDatum("x", 3, 3, SignedPerm.parse("(1 2 3)", 3), SignedPerm.parse("(1 2 3)", 3))
    assert "kgl-inversion" in validate(HypSplice(bad_inv, (FIG8,) * 3)).codes()


def test_violation_paths():
    t = Sum((FIG8, Cable(2, 3, HypSplice(KGLS["whitehead"], (Torus(2, 2),)))))
    paths = [v.path for v in validate(t)]
    assert "$.summands[1].companion.children[0]" in paths


def test_normalize():
    assert normalize(Cable(2, 3, Unknot())) == Torus(2, 3)
    assert normalize(Sum((FIG8, Sum((Torus(2, 3), FIG8))))) == Sum((FIG8, Torus(2, 3), FIG8))
    with pytest.raises(InvalidTree):
        normalize(Torus(2, 4))


def test_walk_and_depth():
    t = Cable(2, 3, Sum((FIG8, Torus(2, 5))))
    assert [p for p, _ in walk(t)] == ["$", "$.companion", "$.companion.summands[0]", "$.companion.summands[1]"]
    assert depth(t) == 3
