import pytest
from hypothesis import given, settings, strategies as st

from kspace.intmatrix import IntMatrix, block_diag, invariant_factors, snf, snf_with_inverse
from kspace.oracle import determinantal_factors, naive_invariant_factors
from kspace.verify import snf_contract_holds

matrices = st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_arithmetic():
    A = IntMatrix([[1, 2], [3, 4]])
    assert A @ IntMatrix.identity(2) == A
    assert (A + A) == IntMatrix([[2, 4], [6, 8]])
    assert A.T == IntMatrix([[1, 3], [2, 4]])
    assert A.det() == -2
    assert (A ** 2) == A @ A
    assert block_diag(A, IntMatrix([[5]])).shape == (3, 3)
    assert IntMatrix([[0, 3, 1], [2, 0, 4], [1, 1, 1]]).det() == 8


def test_known_forms():
    _, D, _ = snf(IntMatrix([[2, 4], [6, 8]]))
    assert D.diagonal() == [2, 4]
    _, D, _ = snf(IntMatrix.diag([6, 4]))
    assert D.diagonal() == [2, 12]
    assert invariant_factors(IntMatrix.zeros(2, 3)) == []
    assert invariant_factors(IntMatrix([[4, 6]])) == [2]


def test_empty_shapes():
    for A in (IntMatrix.zeros(0, 3), IntMatrix.zeros(3, 0)):
        U, D, V = snf(A)
        assert U @ A @ V == D


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_contract(rows):
    A = IntMatrix(rows)
    assert snf_contract_holds(A)
    U, D, V, Vinv = snf_with_inverse(A)
    assert V @ Vinv == IntMatrix.identity(A.ncols)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_agrees_with_oracle(rows):
    A = IntMatrix(rows)
    assert invariant_factors(A) == naive_invariant_factors(rows)
    assert invariant_factors(A) == determinantal_factors(rows)


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
