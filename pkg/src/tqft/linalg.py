"""Exact rational matrices and tensors.

Scalars are :class:`fractions.Fraction`. Matrices are immutable, dense and
row-major. Every linear map ``V -> W`` is stored as a ``dim W x dim V``
matrix, so composition "f then g" is ``g @ f``.

Kronecker convention: in ``kron(a, b)`` the index of ``a`` is the outer
(slower-varying) one, i.e. ``kron(a, b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``.
Tensor powers ``V (x) V`` use the same convention: basis ``e_i (x) e_j`` sits
at position ``i*n + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np


# Shared constants: tuple comparison short-circuits on identity, which makes
# equality of large sparse matrices cheap.
ZERO = Fraction(0)
ONE = Fraction(1)


class SingularMatrix(ArithmeticError):
    """Raised when an exact inverse does not exist."""


class NonConvergence(ArithmeticError):
    """Raised when the floating-point eigen solver gives unusable pairs."""


def to_scalar(x) -> Fraction:
    """Coerce ``x`` (int, Fraction, or ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def scalar_str(x: Fraction) -> str:
    """Report form of an exact scalar: ``"-3/4"``, ``"5"``, ``"0"``."""
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(to_scalar(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, vec: Iterable) -> "ExactMatrix":
        vec = tuple(to_scalar(x) for x in vec)
        return cls(len(vec), 1, vec)

    @classmethod
    def row(cls, vec: Iterable) -> "ExactMatrix":
        vec = tuple(to_scalar(x) for x in vec)
        return cls(1, len(vec), vec)

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls(n, n, tuple(to_scalar(values[i]) if i == j else ZERO
                               for i in range(n) for j in range(n)))

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col_list(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_lists(self) -> list[list[Fraction]]:
        return [self.row_list(i) for i in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        return [[scalar_str(x) for x in r] for r in self.to_lists()]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square() and self == ExactMatrix.identity(self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> "ExactMatrix":
        r, c, e = self.rows, self.cols, self.entries
        return ExactMatrix(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), Fraction(0))

    def to_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.entries], dtype=float).reshape(self.rows, self.cols)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return ExactMatrix(self.rows, self.cols,
                           tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return ExactMatrix(self.rows, self.cols,
                           tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, s) -> "ExactMatrix":
        s = to_scalar(s)
        return ExactMatrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __rmul__(self, s) -> "ExactMatrix":
        return self.scale(s)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def apply(self, vec: Sequence) -> list[Fraction]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        c, e = self.cols, self.entries
        out = []
        for i in range(self.rows):
            acc = Fraction(0)
            for j in range(c):
                a = e[i * c + j]
                if a and vec[j]:
                    acc += a * vec[j]
            out.append(acc)
        return out

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, {self.to_strings()})"


@dataclass(frozen=True, eq=True)
class ExactTensor:
    shape: tuple[int, ...]
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != math.prod(self.shape):
            raise ValueError(f"tensor of shape {self.shape} needs {math.prod(self.shape)} entries")

    @classmethod
    def from_nested(cls, nested, shape: Sequence[int]) -> "ExactTensor":
        flat: list[Fraction] = []

        def walk(x, depth):
            if depth == len(shape):
                flat.append(to_scalar(x))
                return
            if len(x) != shape[depth]:
                raise ValueError(f"axis {depth} has length {len(x)}, expected {shape[depth]}")
            for y in x:
                walk(y, depth + 1)

        walk(nested, 0)
        return cls(tuple(shape), tuple(flat))

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> "ExactTensor":
        return cls(tuple(shape), (ZERO,) * math.prod(shape))

    def _offset(self, idx: Sequence[int]) -> int:
        off = 0
        for i, n in zip(idx, self.shape):
            if not 0 <= i < n:
                raise IndexError(idx)
            off = off * n + i
        return off

    def __getitem__(self, idx: tuple[int, ...]) -> Fraction:
        if len(idx) != len(self.shape):
            raise IndexError(idx)
        return self.entries[self._offset(idx)]

    def to_nested(self) -> list:
        def build(depth, off):
            if depth == len(self.shape):
                return self.entries[off]
            stride = math.prod(self.shape[depth + 1:])
            return [build(depth + 1, off + i * stride) for i in range(self.shape[depth])]
        return build(0, 0)

    def as_matrix(self, row_axes: int) -> ExactMatrix:
        """Flatten the first ``row_axes`` axes into rows and the rest into columns."""
        r = math.prod(self.shape[:row_axes])
        c = math.prod(self.shape[row_axes:])
        return ExactMatrix(r, c, self.entries)


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    # sparse row view of b; kron-built operators are mostly zeros
    b_rows = [[(j, be[k * p + j]) for j in range(p) if be[k * p + j]] for k in range(m)]
    out = [ZERO] * (n * p)
    for i in range(n):
        base = i * p
        for k in range(m):
            aik = ae[i * m + k]
            if not aik:
                continue
            for j, bkj in b_rows[k]:
                out[base + j] += aik * bkj
    return ExactMatrix(n, p, tuple(out))


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    ra, ca, rb, cb = a.rows, a.cols, b.rows, b.cols
    ae, be = a.entries, b.entries
    out = [ZERO] * (ra * rb * ca * cb)
    width = ca * cb
    for i in range(ra):
        for j in range(ca):
            x = ae[i * ca + j]
            if not x:
                continue
            for k in range(rb):
                row = (i * rb + k) * width + j * cb
                for l in range(cb):
                    y = be[k * cb + l]
                    if y:
                        out[row + l] = x * y
    return ExactMatrix(ra * rb, ca * cb, tuple(out))


def kron_all(mats: Iterable[ExactMatrix]) -> ExactMatrix:
    return reduce(kron, mats, ExactMatrix.identity(1))


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a list of row vectors.

    Returns the nonzero reduced rows and their pivot columns. Rows are
    absorbed one at a time so a long list of sparse spanning vectors never
    has to be materialised as a single matrix.
    """
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for raw in rows:
        v = [to_scalar(x) for x in raw]
        if len(v) != ncols:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {ncols}")
        for r, p in zip(basis, pivots):
            c = v[p]
            if c:
                for j in range(ncols):
                    if r[j]:
                        v[j] -= c * r[j]
        lead = next((j for j in range(ncols) if v[j]), None)
        if lead is None:
            continue
        inv = 1 / v[lead]
        v = [x * inv for x in v]
        for r in basis:
            c = r[lead]
            if c:
                for j in range(ncols):
                    if v[j]:
                        r[j] -= c * v[j]
        basis.append(v)
        pivots.append(lead)
        if len(basis) == ncols:
            break
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(a: ExactMatrix) -> int:
    return len(rref(a.to_lists(), a.cols)[1])


def nullspace(a: ExactMatrix) -> list[list[Fraction]]:
    """Basis of ``{x : a x = 0}``."""
    reduced, pivots = rref(a.to_lists(), a.cols)
    free = [j for j in range(a.cols) if j not in set(pivots)]
    out = []
    for f in free:
        x = [Fraction(0)] * a.cols
        x[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            x[p] = -r[f]
        out.append(x)
    return out


def mat_inverse(a: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not a.is_square():
        raise ValueError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    aug = [a.row_list(i) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            c = aug[r][col]
            if r != col and c:
                pr = aug[col]
                aug[r] = [x - c * y for x, y in zip(aug[r], pr)]
    return ExactMatrix(n, n, tuple(x for row in aug for x in row[n:]))


def quotient_with_section(ambient_dim: int, spanning_vectors: Iterable[Sequence]
                          ) -> tuple[ExactMatrix, ExactMatrix, int]:
    """Projection onto ``Q^n / span`` together with a linear section of it.

    The complement is spanned by the standard basis vectors at the non-pivot
    columns of the reduced span. The projection ``P`` is ``(d, n)`` with kernel
    exactly the span; the section ``S`` is ``(n, d)`` with ``P @ S = 1``.
    """
    reduced, pivots = rref(spanning_vectors, ambient_dim)
    pivot_set = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivot_set]
    d = len(free)
    proj = [[Fraction(0)] * ambient_dim for _ in range(d)]
    sect = [[Fraction(0)] * d for _ in range(ambient_dim)]
    for k, j in enumerate(free):
        proj[k][j] = Fraction(1)
        sect[j][k] = Fraction(1)
    for r, p in zip(reduced, pivots):
        for k, j in enumerate(free):
            if r[j]:
                proj[k][p] = -r[j]
    return (ExactMatrix.from_rows(proj, cols=ambient_dim),
            ExactMatrix.from_rows(sect, cols=d), d)


def quotient_basis(ambient_dim: int, spanning_vectors: Iterable[Sequence]) -> tuple[ExactMatrix, int]:
    """Projection of ``Q^ambient_dim`` onto a complement of ``span(spanning_vectors)``."""
    proj, _, d = quotient_with_section(ambient_dim, spanning_vectors)
    return proj, d


def float_eigen(a: ExactMatrix, rtol: float = 1e-9) -> list[tuple[complex, np.ndarray]]:
    """Floating-point eigenpairs of an exact square matrix (diagnostics only).

    Eigenvectors are unit-norm with the phase fixed so the largest component
    is real and positive. Pairs are sorted by eigenvalue (real, imaginary)
    and then by eigenvector components.
    """
    if not a.is_square():
        raise ValueError("eigen-decomposition needs a square matrix")
    if a.rows == 0:
        return []
    m = a.to_float()
    try:
        vals, vecs = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    scale = max(np.linalg.norm(m), 1.0)
    pairs = []
    for k in range(len(vals)):
        v = vecs[:, k].astype(complex)
        v = v / np.linalg.norm(v)
        big = int(np.argmax(np.abs(v)))
        v = v * (abs(v[big]) / v[big])
        lam = complex(vals[k])
        if np.linalg.norm(m @ v - lam * v) > rtol * scale:
            raise NonConvergence(f"residual too large for eigenvalue {lam}")
        pairs.append((lam, v))

    def key(pair):
        lam, v = pair
        return (round(lam.real, 9), round(lam.imag, 9),
                tuple((round(z.real, 9), round(z.imag, 9)) for z in v))

    return sorted(pairs, key=key)
