import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import frobenius_corpus
from tqft.algebra import matrix_algebra
from tqft.bordism import (
    CAP,
    COPANTS,
    CUP,
    CYL,
    PANTS,
    SWAP,
    TypeMismatch,
    cerf_normalize_1d,
    circle_word,
    closed_surface_word,
    s_diagram,
    word,
)
from tqft.evaluate import (
    OneDTheory,
    TwoDTheory,
    evaluate_1d,
    evaluate_2d,
    evaluation_equivalent,
    scalar_of,
    swap_matrix,
)
from tqft.frobenius import FrobeniusAlgebra, InvalidAlgebra, partition_function, truncated_polynomial
from tqft.linalg import ExactMatrix, kron
from tqft.random_words import random_word_1d, random_word_2d


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_circle_is_dimension(n):
    assert scalar_of(evaluate_1d(OneDTheory(n), circle_word())) == n


@pytest.mark.parametrize("n", [0, 1, 3])
def test_s_diagrams_identity(n):
    t = OneDTheory(n)
    for sign in "+-":
        assert evaluate_1d(t, s_diagram(sign)) == ExactMatrix.identity(n)


def test_swap_matrix_involution():
    s = swap_matrix(3)
    assert s @ s == ExactMatrix.identity(9)
    a = ExactMatrix.from_rows([[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    b = ExactMatrix.from_rows([[0, 1, 0], [1, 0, 2], [0, 0, 1]])
    assert s @ kron(a, b) @ s == kron(b, a)


def test_closed_surfaces_match_handle_formula():
    for _, a, _ in frobenius_corpus():
        t = TwoDTheory(a)
        for g in range(4):
            assert scalar_of(evaluate_2d(t, closed_surface_word(g))) == partition_function(a, g)


def test_truncated_polynomial_genus_two_vanishes():
    t = TwoDTheory(truncated_polynomial(2))
    assert scalar_of(evaluate_2d(t, closed_surface_word(2))) == 0


def test_theory_rejects_bad_inputs():
    m2 = matrix_algebra(2)
    nc = FrobeniusAlgebra(4, m2.structure_constants, m2.unit, m2.labels, (1, 0, 0, 1),
                          commutative=False)
    with pytest.raises(ValueError):
        TwoDTheory(nc)
    a = truncated_polynomial(2)
    with pytest.raises(InvalidAlgebra):
        TwoDTheory(FrobeniusAlgebra(2, a.structure_constants, a.unit, (), (1, 0)))
    with pytest.raises(TypeMismatch):
        evaluate_1d(OneDTheory(2), closed_surface_word(0))
    with pytest.raises(TypeMismatch):
        evaluate_2d(TwoDTheory(a), circle_word())
    with pytest.raises(TypeMismatch):
        evaluation_equivalent(TwoDTheory(a), word(PANTS), word(CYL))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_2d_functoriality(seed):
    rng = random.Random(seed)
    t = TwoDTheory(truncated_polynomial(2))
    w1 = random_word_2d(rng, length=rng.randint(1, 4))
    w2 = random_word_2d(rng, length=rng.randint(1, 4), source=len(w1.target))
    assert evaluate_2d(t, w1 >> w2) == evaluate_2d(t, w2) @ evaluate_2d(t, w1)
    w3 = random_word_2d(rng, length=rng.randint(1, 3), max_circles=2)
    assert evaluate_2d(t, w1 | w3) == kron(evaluate_2d(t, w1), evaluate_2d(t, w3))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 1, 2, 3]))
def test_1d_cerf_invariance(seed, n):
    w = random_word_1d(random.Random(seed), length=6)
    t = OneDTheory(n)
    assert evaluate_1d(t, w) == evaluate_1d(t, cerf_normalize_1d(w))


def test_pair_of_pants_is_multiplication():
    a = truncated_polynomial(2)
    t = TwoDTheory(a)
    assert evaluate_2d(t, word(PANTS)) == a.mult_matrix()
    assert evaluate_2d(t, word(CAP)).col_list(0) == list(a.unit)
    assert evaluate_2d(t, word(CUP)).row_list(0) == list(a.trace)
    assert evaluate_2d(t, word(SWAP)) == swap_matrix(2)
    assert evaluate_2d(t, word(COPANTS, PANTS)).apply([1, 0]) == [0, 2]


def dense_evaluate(theory, w):
    """Reference: Kronecker product of each slice, multiplied in time order."""
    from tqft.linalg import kron_all

    result = ExactMatrix.identity(theory.dim ** len(w.source))
    for s in w.slices:
        result = kron_all(theory.generator_matrix(g) for g in s) @ result
    return result


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sparse_evaluation_matches_dense(seed):
    rng = random.Random(seed)
    t1 = OneDTheory(2)
    w = random_word_1d(rng, length=4, max_points=4)
    assert evaluate_1d(t1, w) == dense_evaluate(t1, w)
    t2 = TwoDTheory(truncated_polynomial(2))
    v = random_word_2d(rng, length=4)
    assert evaluate_2d(t2, v) == dense_evaluate(t2, v)
