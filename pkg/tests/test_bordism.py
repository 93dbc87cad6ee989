import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft.bordism import (
    CAP,
    COEV,
    COPANTS,
    CUP,
    CYL,
    EV,
    ID_MINUS,
    ID_PLUS,
    PANTS,
    SYMM,
    DimensionMismatch,
    Object1D,
    Object2D,
    TypeMismatch,
    cerf_reduce,
    cerf_normalize_1d,
    circle_word,
    closed_surface_word,
    compose,
    empty_word,
    identity_word,
    open_surface_word,
    s_diagram,
    word,
)
from tqft.random_words import random_word_1d


def generator_count(w):
    return sum(1 for s in w.slices for g in s if not g.is_identity)


def test_generator_types():
    assert COEV.source == Object1D(()) and COEV.target == Object1D(("+", "-"))
    assert EV.source == Object1D(("-", "+"))
    assert SYMM("+", "-").target == Object1D(("-", "+"))
    assert PANTS.source == Object2D(2) and PANTS.target == Object2D(1)
    assert CAP.source == Object2D(0)


def test_ill_typed_words_rejected():
    with pytest.raises(TypeMismatch):
        word(PANTS, PANTS)
    with pytest.raises(TypeMismatch):
        word(COEV, COEV)
    with pytest.raises(DimensionMismatch):
        word((CAP, COEV))
    with pytest.raises(TypeMismatch):
        compose(word(CAP), word(PANTS))


def test_compose_and_tensor():
    w = word(CAP) | word(COPANTS)
    assert w.source == Object2D(1) and w.target == Object2D(3)
    assert len(w) == 1
    v = w >> word((PANTS, CYL), PANTS)
    assert v.target == Object2D(1)
    e = empty_word(2)
    assert (e | w) == w
    assert compose(identity_word(Object2D(1)), word(CUP)).target == Object2D(0)


def test_closed_surfaces_are_closed():
    for g in range(11):
        w = closed_surface_word(g)
        assert w.source == w.target == Object2D(0)
        assert len(w) == 2 * g + 2


@pytest.mark.parametrize("g,p,q", [(0, 1, 1), (1, 2, 0), (0, 0, 2), (2, 3, 2), (0, 0, 0)])
def test_open_surface_types(g, p, q):
    w = open_surface_word(g, p, q)
    assert (w.source, w.target) == (Object2D(p), Object2D(q))


def test_s_diagrams_reduce_to_identity():
    for sign in "+-":
        w, moves = cerf_reduce(s_diagram(sign))
        assert moves == 1
        assert generator_count(w) == 0
        assert w.source == w.target == Object1D((sign,))


def test_circle_has_no_zigzag():
    w, moves = cerf_reduce(circle_word())
    assert moves == 0 and w == circle_word()


def test_cerf_2d_rejected():
    with pytest.raises(DimensionMismatch):
        cerf_reduce(closed_surface_word(0))



@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cerf_is_idempotent_and_shrinks(seed):
    rng = random.Random(seed)
    w = random_word_1d(rng, length=rng.randint(1, 8))
    r, moves = cerf_reduce(w)
    assert (r.source, r.target) == (w.source, w.target)
    assert generator_count(r) == generator_count(w) - 2 * moves
    assert cerf_normalize_1d(r) == r


def test_zigzag_separated_by_unrelated_generator():
    # the S on the first strand with a crossing of two other strands in between
    w = word((COEV, ID_PLUS, ID_PLUS, ID_PLUS), (ID_PLUS, ID_MINUS, ID_PLUS, SYMM("+", "+")),
             (ID_PLUS, EV, ID_PLUS, ID_PLUS))
    r, moves = cerf_reduce(w)
    assert moves == 1
    assert generator_count(r) == 1
