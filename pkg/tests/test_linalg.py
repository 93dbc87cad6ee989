from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft.linalg import (
    ExactMatrix,
    ExactTensor,
    SingularMatrix,
    float_eigen,
    kron,
    mat_inverse,
    nullspace,
    quotient_basis,
    quotient_with_section,
    rank,
    scalar_str,
    to_scalar,
)

small = st.integers(-4, 4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_scalar_strings():
    assert scalar_str(Fraction(3, 6)) == "1/2"
    assert scalar_str(Fraction(4)) == "4"
    assert to_scalar("-2/4") == Fraction(-1, 2)


def test_basic_ops():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.identity(2)
    assert a @ b == a
    assert (a + a) == a.scale(2)
    assert a.T[0, 1] == 3
    assert a.trace() == 5
    assert a.apply([1, 1]) == [3, 7]


def test_kron_first_factor_outer():
    a = ExactMatrix.from_rows([[1, 2]])
    b = ExactMatrix.from_rows([[1], [10]])
    assert kron(a, b).to_lists() == [[1, 2], [10, 20]]


def test_inverse_and_singular():
    a = ExactMatrix.from_rows([[2, 1], [1, 1]])
    assert a @ mat_inverse(a) == ExactMatrix.identity(2)
    with pytest.raises(SingularMatrix):
        mat_inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))


def test_tensor_nested_round_trip():
    t = ExactTensor.from_nested([[[1, 2], [3, 4]], [[5, 6], [7, 8]]], (2, 2, 2))
    assert t[1, 0, 1] == 6
    assert ExactTensor.from_nested(t.to_nested(), (2, 2, 2)) == t


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(rows):
    a = ExactMatrix.from_rows(rows, cols=4)
    ker = nullspace(a)
    assert rank(a) + len(ker) == 4
    for v in ker:
        assert not any(a.apply(v))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=5, max_size=5), max_size=4))
def test_quotient_projection_and_section(vecs):
    p, s, d = quotient_with_section(5, vecs)
    assert d == 5 - (rank(ExactMatrix.from_rows(vecs, cols=5)) if vecs else 0)
    assert p @ s == ExactMatrix.identity(d)
    for v in vecs:
        assert not any(p.apply(v))
    assert quotient_basis(5, vecs) == (p, d)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3))
def test_inverse_property(rows):
    a = ExactMatrix.from_rows(rows)
    if rank(a) < 3:
        return
    assert mat_inverse(a) @ a == ExactMatrix.identity(3)


def test_float_eigen_residual_and_order():
    a = ExactMatrix.from_rows([[2, 0], [0, 1]])
    pairs = float_eigen(a)
    assert [round(v.real, 9) for v, _ in pairs] == [1.0, 2.0]
