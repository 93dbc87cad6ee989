"""Random well-typed bordism words for property tests."""

from __future__ import annotations

import random

from .bordism import (
    CAP,
    COEV,
    COPANTS,
    CUP,
    CYL,
    EV,
    ID_MINUS,
    ID_PLUS,
    PANTS,
    SWAP,
    SYMM,
    BordismWord,
    Object1D,
    Object2D,
    s_diagram,
)


def _ident_1d(signs) -> tuple:
    return tuple(ID_PLUS if s == "+" else ID_MINUS for s in signs)


def _random_slice_1d(rng: random.Random, signs: tuple[str, ...], max_points: int):
    """One non-identity generator padded with identities, or None if nothing fits."""
    options = []
    n = len(signs)
    if n + 2 <= max_points:
        options += [("coev", k) for k in range(n + 1)]
    options += [("ev", k) for k in range(n - 1) if signs[k:k + 2] == ("-", "+")]
    options += [("symm", k) for k in range(n - 1)]
    if not options:
        return None
    kind, k = rng.choice(options)
    left, right = _ident_1d(signs[:k]), None
    if kind == "coev":
        right = _ident_1d(signs[k:])
        return left + (COEV,) + right, signs[:k] + ("+", "-") + signs[k:]
    right = _ident_1d(signs[k + 2:])
    if kind == "ev":
        return left + (EV,) + right, signs[:k] + signs[k + 2:]
    a, b = signs[k], signs[k + 1]
    return left + (SYMM(a, b),) + right, signs[:k] + (b, a) + signs[k + 2:]


def _splice_s_diagram(rng: random.Random, signs: tuple[str, ...]) -> list[tuple]:
    """Slices of an S-shaped zigzag on one strand, identities elsewhere."""
    k = rng.randrange(len(signs))
    z = s_diagram(signs[k])
    left, right = _ident_1d(signs[:k]), _ident_1d(signs[k + 1:])
    return [left + s + right for s in z.slices]


def random_word_1d(rng: random.Random, length: int = 6, max_points: int = 6,
                   source: Object1D | None = None, zigzag_rate: float = 0.3) -> BordismWord:
    """A random 1D word of roughly ``length`` slices."""
    if source is None:
        source = Object1D(tuple(rng.choice("+-") for _ in range(rng.randint(0, 2))))
    signs = tuple(source.signs)
    slices = []
    for _ in range(length):
        if signs and len(signs) + 2 <= max_points and rng.random() < zigzag_rate:
            slices += _splice_s_diagram(rng, signs)
            continue
        step = _random_slice_1d(rng, signs, max_points)
        if step is None:
            break
        s, signs = step
        slices.append(s)
    if not slices:
        slices.append(_ident_1d(signs))
    return BordismWord(tuple(slices), source, Object1D(signs))


_GENS_2D = [(CYL, 1, 1), (CAP, 0, 1), (CUP, 1, 0), (PANTS, 2, 1), (COPANTS, 1, 2), (SWAP, 2, 2)]


def random_word_2d(rng: random.Random, length: int = 5, max_circles: int = 3,
                   source: int | None = None) -> BordismWord:
    """A random 2D word; each slice applies one generator, cylinders elsewhere."""
    n = rng.randint(0, 2) if source is None else source
    start = n
    slices = []
    for _ in range(length):
        fits = [(g, i, o) for g, i, o in _GENS_2D
                if g is not CYL and i <= n and n - i + o <= max_circles]
        g, i, o = rng.choice(fits)
        k = rng.randint(0, n - i)
        slices.append((CYL,) * k + (g,) + (CYL,) * (n - i - k))
        n = n - i + o
    if not slices:
        slices.append((CYL,) * n)
    return BordismWord(tuple(slices), Object2D(start), Object2D(n))
