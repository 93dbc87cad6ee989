"""Finite-dimensional unital algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import ExactMatrix, ExactTensor, kron, to_scalar


@dataclass(frozen=True)
class Algebra:
    """Associative unital algebra with ``e_i e_j = sum_k c[i, j, k] e_k``.

    The constructor does not check the axioms; see :meth:`axiom_violations`.
    """

    dim: int
    structure_constants: ExactTensor
    unit: tuple[Fraction, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.dim
        if self.structure_constants.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape {(n, n, n)}, "
                             f"got {self.structure_constants.shape}")
        object.__setattr__(self, "unit", tuple(to_scalar(x) for x in self.unit))
        if len(self.unit) != n:
            raise ValueError(f"unit has length {len(self.unit)}, expected {n}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(n)))
        elif len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for dimension {n}")

    @classmethod
    def from_products(cls, dim: int, product, unit: Sequence, labels: Sequence[str] = ()):
        """Build from a callable ``product(i, j) -> coefficient vector``."""
        flat = []
        for i in range(dim):
            for j in range(dim):
                v = product(i, j)
                flat.extend(to_scalar(x) for x in v)
        return cls(dim, ExactTensor((dim, dim, dim), tuple(flat)), tuple(unit), tuple(labels))

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def mult_matrix(self) -> ExactMatrix:
        """The multiplication ``V (x) V -> V`` as a ``n x n^2`` matrix."""
        n = self.dim
        c = self.structure_constants.entries
        return ExactMatrix(n, n * n, tuple(c[(i * n + j) * n + k]
                                           for k in range(n) for i in range(n) for j in range(n)))

    def multiply(self, x: Sequence, y: Sequence) -> list[Fraction]:
        n = self.dim
        c = self.structure_constants.entries
        out = [Fraction(0)] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                s = x[i] * y[j]
                base = (i * n + j) * n
                for k in range(n):
                    if c[base + k]:
                        out[k] += s * c[base + k]
        return out

    def left_mult(self, v: Sequence) -> ExactMatrix:
        """Matrix of ``x -> v x``."""
        cols = [self.multiply(v, self.basis_vector(j)) for j in range(self.dim)]
        return ExactMatrix.from_rows(cols, cols=self.dim).transpose() if cols else ExactMatrix.zeros(0, 0)

    def right_mult(self, v: Sequence) -> ExactMatrix:
        """Matrix of ``x -> x v``."""
        cols = [self.multiply(self.basis_vector(j), v) for j in range(self.dim)]
        return ExactMatrix.from_rows(cols, cols=self.dim).transpose() if cols else ExactMatrix.zeros(0, 0)

    def is_commutative(self) -> bool:
        return self.commutativity_witness() is None

    def commutativity_witness(self) -> tuple[int, int, int] | None:
        n = self.dim
        c = self.structure_constants
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    if c[i, j, k] != c[j, i, k]:
                        return (i, j, k)
        return None

    def unit_witness(self) -> tuple[int] | None:
        for i in range(self.dim):
            e = self.basis_vector(i)
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                return (i,)
        return None

    def associativity_witness(self) -> tuple[int, int, int] | None:
        n = self.dim
        m = self.mult_matrix()
        eye = ExactMatrix.identity(n)
        lhs = m @ kron(m, eye)
        rhs = m @ kron(eye, m)
        if lhs == rhs:
            return None
        for col in range(n ** 3):
            if lhs.col_list(col) != rhs.col_list(col):
                return (col // (n * n), (col // n) % n, col % n)
        return None  # pragma: no cover

    def axiom_violations(self) -> list[tuple[str, tuple[int, ...]]]:
        out = []
        w = self.unit_witness()
        if w is not None:
            out.append(("unit", w))
        w = self.associativity_witness()
        if w is not None:
            out.append(("associativity", w))
        return out

    def opposite(self) -> "Algebra":
        n = self.dim
        c = self.structure_constants
        flat = tuple(c[j, i, k] for i in range(n) for j in range(n) for k in range(n))
        return Algebra(n, ExactTensor((n, n, n), flat), self.unit,
                       tuple(f"{x}°" for x in self.labels))

    def tensor(self, other: "Algebra") -> "Algebra":
        """``A (x) B`` with basis ``a_i (x) b_k`` at ``i * dim(B) + k``."""
        n, m = self.dim, other.dim
        ca, cb = self.structure_constants, other.structure_constants

        def product(x, y):
            i, k = divmod(x, m)
            j, l = divmod(y, m)
            return [ca[i, j, p] * cb[k, l, q] for p in range(n) for q in range(m)]

        unit = [a * b for a in self.unit for b in other.unit]
        labels = [f"{a}⊗{b}" for a in self.labels for b in other.labels]
        return Algebra.from_products(n * m, product, unit, labels)


def ground_field() -> Algebra:
    """The rationals as a one-dimensional algebra (the monoidal unit)."""
    return Algebra(1, ExactTensor((1, 1, 1), (Fraction(1),)), (Fraction(1),), ("1",))


def matrix_algebra(n: int) -> Algebra:
    """Full matrix algebra ``M_n`` with basis ``E_ij`` at index ``i*n + j``."""

    def product(x, y):
        i, j = divmod(x, n)
        k, l = divmod(y, n)
        v = [0] * (n * n)
        if j == k:
            v[i * n + l] = 1
        return v

    unit = [int(i == j) for i in range(n) for j in range(n)]
    labels = [f"E{i}{j}" for i in range(n) for j in range(n)]
    return Algebra.from_products(n * n, product, unit, labels)
