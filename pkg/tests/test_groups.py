import pytest

from kspace.abelian import AbelianPresentation, H1Result
from kspace.braids import (braid_perm, braid_presentation, mixed_braid, mixed_braid_group, pure_generator,
                           transposition_lift, young_index)
from kspace.coset import reidemeister_schreier, tietze, todd_coxeter
from kspace.errors import IndexTooLarge
from kspace.fpgroup import FpGroup, abelianization, commutator, free_reduce, word_inverse, word_to_str
from kspace.oracle import braid_perm_rep, coset_count_check


def test_words():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert word_inverse((1, -2)) == (2, -1)
    assert commutator((1,), (2,)) == (1, 2, -1, -2)
    assert word_to_str((1, 2, -1), ["m1", "t1"]) == "m1*t1*m1^-1"


def test_abelianization():
    z2 = FpGroup(("a",), ((1, 1),))
    assert abelianization(z2) == H1Result(0, (2,))
    z2_free = FpGroup(("a", "b"), (commutator((1,), (2,)),))
    assert abelianization(z2_free) == H1Result(2)
    # B_3 abelianizes to Z
    assert abelianization(braid_presentation(3)) == H1Result(1)


def test_h1_result():
    assert str(H1Result(2, (2, 2))) == "Z^2 + Z/2 + Z/2"
    assert str(H1Result(0)) == "0"
    with pytest.raises(ValueError):
        H1Result(0, (2, 3))
    with pytest.raises(ValueError):
        H1Result(0, (1,))


def test_presentation_queries():
    p = AbelianPresentation(3, [[2, 0, 0], [0, 1, -1]])
    assert p.structure() == H1Result(1, (2,))
    assert p.is_zero([2, 0, 0])
    assert p.is_zero([0, 1, -1])
    assert not p.is_zero([1, 0, 0])


def test_todd_coxeter_symmetric_group():
    # S_3 = <a, b | a^2, b^3, (ab)^2>
    s3 = FpGroup(("a", "b"), ((1, 1), (2, 2, 2), (1, 2, 1, 2)))
    assert todd_coxeter(s3, []).index == 6
    assert todd_coxeter(s3, [(1,)]).index == 3
    table = todd_coxeter(s3, [(2,)])
    sub = reidemeister_schreier(s3, table)
    assert abelianization(sub.group) == H1Result(0, (3,))


def test_tietze_removes_generators():
    kept, rels, values = tietze(3, [(1, -2), (2, 3, -2, -3)])
    assert len(kept) == 2
    assert len(values) == 3


def test_braid_perm_convention():
    assert braid_perm((1,), 3) == (2, 1, 3)
    assert braid_perm((1, 2), 3) == (3, 1, 2)


def test_subgroup_generators_lie_in_subgroup():
    g = mixed_braid(4, [[1, 2], [3], [4]])
    assert g.contains(pure_generator(1, 3))
    assert g.contains(transposition_lift(1, 2))
    assert not g.contains(transposition_lift(2, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pure_braid_ranks(n):
    pure = mixed_braid_group(n, [[i] for i in range(1, n + 1)])
    assert abelianization(pure) == H1Result(n * (n - 1) // 2)


@pytest.mark.parametrize("young,index", [([[1], [2], [3]], 6), ([[1, 2], [3]], 3), ([[1, 2, 3]], 1)])
def test_coset_counts_match_oracle(young, index):
    g = mixed_braid(3, young)
    assert g.coset_count == index == young_index(3, young)
    assert coset_count_check(braid_presentation(3), braid_perm_rep(3, young)) == index


def test_full_braid_group_h1():
    assert abelianization(mixed_braid_group(4, [[1, 2, 3, 4]])) == H1Result(1)
    # B_3^{S1xS2} is the Artin group of type B_2
    assert abelianization(mixed_braid_group(3, [[1], [2, 3]])) == H1Result(2)


def test_strand_limit():
    with pytest.raises(IndexTooLarge):
        mixed_braid(7, [[1, 2, 3, 4, 5, 6, 7]])
