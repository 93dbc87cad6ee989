"""Evaluation of bordism words as exact linear maps.

A word from ``Y0`` to ``Y1`` becomes a ``dim F(Y1) x dim F(Y0)`` matrix. A
slice is the Kronecker product of its generators (first factor outermost)
and composition in time order is right-to-left matrix multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bordism import BordismWord, Generator, Kind, TypeMismatch
from .frobenius import FrobeniusAlgebra, comultiplication, require_valid
from .linalg import ONE, ZERO, ExactMatrix


def swap_matrix(n: int, m: int | None = None) -> ExactMatrix:
    """``V (x) W -> W (x) V``, ``v_i (x) w_j -> w_j (x) v_i``."""
    m = n if m is None else m
    rows = [[0] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(m):
            rows[j * n + i][i * m + j] = 1
    return ExactMatrix.from_rows(rows, cols=n * m)


@dataclass(frozen=True)
class OneDTheory:
    """``F(+) = Q^n``, ``F(-) = Q^n`` with the dot-product duality."""

    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")

    def space_dim(self, obj) -> int:
        return self.dim ** len(obj)

    def generator_matrix(self, g: Generator) -> ExactMatrix:
        n = self.dim
        if g.kind in (Kind.ID_PLUS, Kind.ID_MINUS):
            return ExactMatrix.identity(n)
        if g.kind is Kind.COEV:
            return ExactMatrix.column([int(k % (n + 1) == 0) for k in range(n * n)])
        if g.kind is Kind.EV:
            return ExactMatrix.row([int(k % (n + 1) == 0) for k in range(n * n)])
        if g.kind is Kind.SYMM:
            return swap_matrix(n)
        raise TypeMismatch(f"{g.kind.value} is not a 1D generator")


class TwoDTheory:
    """The 2D theory of a commutative Frobenius algebra: ``F(S^1) = V``."""

    def __init__(self, algebra: FrobeniusAlgebra, check: bool = True):
        if check:
            require_valid(algebra)
            if not algebra.is_commutative():
                raise ValueError("a 2D oriented theory needs a commutative Frobenius algebra")
        self.algebra = algebra
        self._cache: dict[Kind, ExactMatrix] = {}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def space_dim(self, obj) -> int:
        return self.dim ** len(obj)

    def generator_matrix(self, g: Generator) -> ExactMatrix:
        if g.kind in self._cache:
            return self._cache[g.kind]
        a = self.algebra
        n = a.dim
        if g.kind is Kind.CYL:
            m = ExactMatrix.identity(n)
        elif g.kind is Kind.CAP:
            m = ExactMatrix.column(a.unit)
        elif g.kind is Kind.CUP:
            m = ExactMatrix.row(a.trace)
        elif g.kind is Kind.PANTS:
            m = a.mult_matrix()
        elif g.kind is Kind.COPANTS:
            m = comultiplication(a)
        elif g.kind is Kind.SWAP:
            m = swap_matrix(n)
        else:
            raise TypeMismatch(f"{g.kind.value} is not a 2D generator")
        self._cache[g.kind] = m
        return m


def _digits(x: int, base: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        x, r = divmod(x, base)
        out.append(r)
    return tuple(reversed(out))


def _sparse_columns(m: ExactMatrix, base: int, width: int) -> list[list[tuple[tuple[int, ...], Fraction]]]:
    cols = [[] for _ in range(m.cols)]
    for i in range(m.rows):
        row = _digits(i, base, width)
        for j in range(m.cols):
            v = m[i, j]
            if v:
                cols[j].append((row, v))
    return cols


def _slice_plan(s, columns) -> list:
    """Runs of identity factors collapse to one ``(start, end)`` copy."""
    plan, pos = [], 0
    for g in s:
        k_in = len(g.source)
        if g.is_identity:
            if plan and plan[-1][0] == "copy" and plan[-1][2] == pos:
                plan[-1] = ("copy", plan[-1][1], pos + k_in)
            else:
                plan.append(("copy", pos, pos + k_in))
        else:
            plan.append(("apply", pos, pos + k_in, columns(g)))
        pos += k_in
    return plan


def _evaluate(theory, w: BordismWord) -> ExactMatrix:
    """Push each source basis vector through the slices.

    Vectors are sparse dicts keyed by one index per boundary component, and a
    slice acts factor by factor, so no slice matrix is ever formed.
    """
    n = theory.dim
    cache: dict = {}

    def columns(g: Generator):
        if g not in cache:
            m = theory.generator_matrix(g)
            cache[g] = _sparse_columns(m, n, len(g.target))
        return cache[g]

    plans = [_slice_plan(s, columns) for s in w.slices if not all(g.is_identity for g in s)]
    k_src, k_tgt = len(w.source), len(w.target)
    size_src, size_tgt = n ** k_src, n ** k_tgt
    entries = [ZERO] * (size_tgt * size_src)
    for j in range(size_src):
        vec = {_digits(j, n, k_src): ONE}
        for plan in plans:
            out: dict = {}
            for key, coeff in vec.items():
                partial = [((), coeff)]
                for step in plan:
                    if step[0] == "copy":
                        seg = key[step[1]:step[2]]
                        partial = [(p + seg, c) for p, c in partial]
                        continue
                    col = 0
                    for d in key[step[1]:step[2]]:
                        col = col * n + d
                    hits = step[3][col]
                    if not hits:
                        partial = []
                        break
                    partial = [(p + r, c * v) if v != 1 else (p + r, c)
                               for p, c in partial for r, v in hits]
                for p, c in partial:
                    out[p] = out.get(p, 0) + c
            vec = {k: v for k, v in out.items() if v}
        for key, v in vec.items():
            i = 0
            for d in key:
                i = i * n + d
            entries[i * size_src + j] = ONE if v == 1 else v
    return ExactMatrix(size_tgt, size_src, tuple(entries))


def evaluate_1d(t: OneDTheory, w: BordismWord) -> ExactMatrix:
    if w.dimension != 1:
        raise TypeMismatch(f"a 1D theory cannot evaluate a {w.dimension}D word")
    return _evaluate(t, w)


def evaluate_2d(t: TwoDTheory, w: BordismWord) -> ExactMatrix:
    if w.dimension != 2:
        raise TypeMismatch(f"a 2D theory cannot evaluate a {w.dimension}D word")
    return _evaluate(t, w)


def evaluate(t, w: BordismWord) -> ExactMatrix:
    if isinstance(t, OneDTheory):
        return evaluate_1d(t, w)
    return evaluate_2d(t, w)


def evaluation_equivalent(t, w1: BordismWord, w2: BordismWord) -> bool:
    if w1.source != w2.source or w1.target != w2.target:
        raise TypeMismatch(f"words have different types: {w1.source} -> {w1.target} "
                           f"vs {w2.source} -> {w2.target}")
    return evaluate(t, w1) == evaluate(t, w2)


def scalar_of(m: ExactMatrix) -> Fraction:
    """The number a closed bordism evaluates to."""
    if m.shape != (1, 1):
        raise ValueError(f"expected a 1x1 matrix, got {m.rows}x{m.cols}")
    return m[0, 0]
