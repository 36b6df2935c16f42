import pytest

from kspace.errors import LimitExceeded, NotFiniteOrder
from kspace.braids import braid_presentation
from kspace.oracle import (braid_perm_rep, coinvariants_bruteforce, coset_count_check, determinantal_factors,
                           naive_invariant_factors)

# order-4 monodromy of the Borromean double figure-8 on the four fibre circles
BORROMEAN_M = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]


def test_frozen_factors():
    assert naive_invariant_factors([[6, 0], [0, 4]]) == [2, 12]
    assert naive_invariant_factors([[0, 0], [0, 0]]) == []
    assert determinantal_factors([[2, 4], [6, 8]]) == [2, 4]
    m_minus_i = [[BORROMEAN_M[i][j] - (i == j) for j in range(4)] for i in range(4)]
    assert naive_invariant_factors(m_minus_i) == [1, 1, 2, 2]


def test_coinvariants():
    h = coinvariants_bruteforce(BORROMEAN_M, 4)
    assert (h.free_rank, h.torsion) == (0, (2, 2))
    assert coinvariants_bruteforce([[1, 0], [0, 1]], 1).free_rank == 2
    with pytest.raises(NotFiniteOrder):
        coinvariants_bruteforce([[1, 1], [0, 1]], 6)


def test_coset_counts():
    assert coset_count_check(braid_presentation(3), braid_perm_rep(3, [[1], [2, 3]])) == 3
    assert coset_count_check(braid_presentation(3), braid_perm_rep(3, [[1, 2, 3]])) == 1
    assert coset_count_check(braid_presentation(4), braid_perm_rep(4, [[1], [2], [3], [4]])) == 24
    with pytest.raises(LimitExceeded):
        coset_count_check(braid_presentation(6), braid_perm_rep(6, [[i] for i in range(1, 7)]), limit=100)
