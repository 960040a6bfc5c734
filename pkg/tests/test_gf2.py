import numpy as np
import pytest
from hypothesis import given, strategies as st

from lcdcodes.gf2 import (
    BinaryMatrix,
    identity,
    is_nonsingular,
    mat_mul,
    nullspace_basis,
    ones,
    rank,
    rref,
)


def M(*rows):
    return BinaryMatrix.from_strings(rows)


def j_minus_i(k):
    return BinaryMatrix([((1 << k) - 1) ^ (1 << (k - 1 - i)) for i in range(k)], k)


def test_rref_identity():
    R, piv = rref(identity(3))
    assert R == identity(3) and piv == [0, 1, 2]


def test_rref_drops_dependent_row():
    R, piv = rref(M("1010", "0110", "1100"))
    assert R.to_strings() == ["1010", "0110", "0000"] and piv == [0, 1]


def test_rref_zero_row():
    R, piv = rref(M("0000"))
    assert R.to_strings() == ["0000"] and piv == []


@pytest.mark.parametrize(
    "mat, r",
    [(identity(4), 4), (M("11", "11"), 1), (M("1010", "0110", "1100"), 2)],
)
def test_rank(mat, r):
    assert rank(mat) == r


def test_identity_product():
    G = M("10110", "01101", "11111")
    assert mat_mul(identity(3), G) == G


@pytest.mark.parametrize("k, expect", [(2, True), (3, False), (4, True), (5, False)])
def test_all_ones_minus_identity(k, expect):
    # det(J - I) = 1 - k over GF(2)
    assert is_nonsingular(j_minus_i(k)) is expect


def test_nullspace_of_identity_is_empty():
    assert nullspace_basis(identity(5)).rows == 0


def test_nullspace_of_all_ones_row():
    N = nullspace_basis(ones(1, 6))
    assert N.rows == 5
    assert all(r.bit_count() % 2 == 0 for r in N.row_ints)


def test_nullspace_annihilates():
    A = M("111000", "111111")
    N = nullspace_basis(A)
    assert N.rows == 4
    assert all(v == 0 for v in mat_mul(A, N.T).row_ints)


def test_array_roundtrip_and_column_convention():
    A = M("101", "011")
    assert np.array_equal(A.to_array(), np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8))
    assert BinaryMatrix.from_array(A.to_array()) == A
    # row 0 is the most significant bit of a column value
    assert [A.column(j) for j in range(3)] == [0b10, 0b01, 0b11]


matrices = st.integers(1, 7).flatmap(
    lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=1, max_size=7).map(lambda r: BinaryMatrix(r, c))
)


@given(matrices)
def test_rank_nullity(A):
    assert rank(A) + nullspace_basis(A).rows == A.cols


@given(matrices)
def test_rank_agrees_with_transpose(A):
    assert rank(A) == rank(A.T)


@given(matrices)
def test_rref_is_reduced(A):
    R, piv = rref(A)
    assert len(piv) == rank(A)
    assert all(r == 0 for r in R.row_ints[len(piv):])
    for i, p in enumerate(piv):
        for j in range(R.rows):
            assert R[j, p] == (1 if i == j else 0)
