import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft.bordism import Object1D, Object2D, TypeMismatch, closed_surface_word, open_surface_word
from tqft.dsl import ParseError, parse_bordism_dsl, tokenize
from tqft.random_words import random_word_1d, random_word_2d


def test_genus_one():
    assert parse_bordism_dsl("cap ; copants ; pants ; cup") == closed_surface_word(1)


def test_three_to_one():
    w = parse_bordism_dsl("pants | cyl ; pants")
    assert (w.source, w.target) == (Object2D(3), Object2D(1))


def test_pants_pants_mismatch():
    with pytest.raises(TypeMismatch) as err:
        parse_bordism_dsl("pants ; pants")
    assert err.value.column == 9
    assert "2 circles" in str(err.value) and "1 circle" in str(err.value)


def test_surface_factor():
    assert parse_bordism_dsl("surface(2,0,0)") == closed_surface_word(2)
    assert parse_bordism_dsl("surface(1, 2, 3)") == open_surface_word(1, 2, 3)
    w = parse_bordism_dsl("surface(0,1,1) | cap ; pants")
    assert (w.source, w.target) == (Object2D(1), Object2D(1))


def test_symm_inference_and_explicit():
    w = parse_bordism_dsl("coev ; symm ; ev")
    assert w.slices[1][0].signs == ("+", "-")
    w = parse_bordism_dsl("symm(-,+) ; coev | id+ | id-")
    assert w.source == Object1D(("-", "+"))


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("cap ;", 1, 6),
    ("cap | | cup", 1, 7),
    ("cap\n ; blob", 2, 4),
    ("surface(1,2)", 1, 12),
    ("symm(+,*)", 1, 8),
    ("cap cup", 1, 5),
])
def test_parse_errors_are_positioned(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_bordism_dsl(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_mixed_dimensions():
    with pytest.raises(TypeMismatch):
        parse_bordism_dsl("cap ; coev")


def test_comments_and_case():
    w = parse_bordism_dsl("# a torus\nCAP ; copants  # split\n; pants ; cup\n")
    assert w == closed_surface_word(1)


def test_empty_factor():
    w = parse_bordism_dsl("empty ; cap")
    assert w.source == Object2D(0) and len(w) == 2
    assert parse_bordism_dsl(w.dsl()) == w


def test_tokens():
    kinds = [t.kind for t in tokenize("id+ | symm(+,-)")]
    assert kinds == ["name", "punct", "name", "punct", "punct", "punct", "punct", "punct", "eof"]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip(seed):
    rng = random.Random(seed)
    for w in (random_word_1d(rng), random_word_2d(rng)):
        assert parse_bordism_dsl(w.dsl()) == w


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_surface_round_trip(g, p, q):
    w = open_surface_word(g, p, q)
    assert parse_bordism_dsl(w.dsl()) == w
    assert parse_bordism_dsl(f"surface({g},{p},{q})") == w
