import pytest
from hypothesis import given, strategies as st

from kspace.signed_perm import SignedPerm


@st.composite
def signed_perms(draw, n=None):
    n = draw(st.integers(0, 6)) if n is None else n
    perm = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    return SignedPerm(tuple(p * s for p, s in zip(perm, signs)))


def test_parse_and_print():
    g = SignedPerm.parse("(1 2 -)", 2)
    assert g.images == (2, -1)
    assert str(g) == "(1 2 -)"
    assert g.order() == 4
    assert str(SignedPerm.identity(3)) == "(1)"
    assert str(SignedPerm.identity(0)) == "()"
    assert SignedPerm.parse("(1 -)", 1).order() == 2


def test_composition_applies_right_factor_first():
    a = SignedPerm.parse("(1 2)", 3)
    b = SignedPerm.parse("(2 3 -)", 3)
    for x in (1, 2, 3):
        assert (a * b)(x) == a(b(x))


def test_bad_cycles_rejected():
    with pytest.raises(ValueError):
        SignedPerm.parse("(1 1)", 2)
    with pytest.raises(ValueError):
        SignedPerm.parse("(1 5)", 2)


@given(signed_perms(n=4), signed_perms(n=4), signed_perms(n=4))
def test_group_laws(a, b, c):
    e = SignedPerm.identity(4)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert (a ** a.order()).is_identity()


@given(signed_perms())
def test_cycle_round_trip(a):
    assert SignedPerm.parse(str(a), a.n) == a
    assert SignedPerm.from_cycles(a.cycles(), a.n) == a


@given(signed_perms(n=3))
def test_act_matches_evaluation(a):
    items = ("x", "y", "z")
    out = a.act(items, lambda s: s.upper())
    for i, img in enumerate(a.images):
        expected = items[i] if img > 0 else items[i].upper()
        assert out[abs(img) - 1] == expected
