"""Frobenius algebras: validation, copairing, comultiplication, handle operator,
closed-surface partition functions and the semisimple idempotent spectrum."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Algebra
from .linalg import (
    ExactMatrix,
    ExactTensor,
    NonConvergence,
    SingularMatrix,
    kron,
    mat_inverse,
    nullspace,
    rank,
    scalar_str,
    to_scalar,
)


class NotSemisimple(ArithmeticError):
    """The algebra has a nonzero nilpotent ideal."""


class InvalidAlgebra(ValueError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


@dataclass(frozen=True)
class FrobeniusAlgebra(Algebra):
    trace: tuple[Fraction, ...] = ()
    commutative: bool = True

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "trace", tuple(to_scalar(x) for x in self.trace))
        if len(self.trace) != self.dim:
            raise ValueError(f"trace has length {len(self.trace)}, expected {self.dim}")

    def tau(self, v: Sequence) -> Fraction:
        return sum((t * x for t, x in zip(self.trace, v)), Fraction(0))

    def underlying(self) -> Algebra:
        return Algebra(self.dim, self.structure_constants, self.unit, self.labels)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.axiom} fails at {self.witness}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class SemisimpleSpectrum:
    idempotent_count: int
    lambdas: tuple[complex, ...]
    idempotent_vectors: np.ndarray = field(compare=False)


def validate(a: FrobeniusAlgebra) -> ValidationReport:
    out = [Violation(axiom, w) for axiom, w in a.axiom_violations()]
    if a.commutative:
        w = a.commutativity_witness()
        if w is not None:
            out.append(Violation("commutativity", w))
    g = pairing(a)
    if rank(g) < a.dim:
        kernel = nullspace(g)[0]
        out.append(Violation("nondegenerate trace", tuple(scalar_str(x) for x in kernel),
                             "singular pairing; witness is a kernel vector"))
    return ValidationReport(tuple(out))


def require_valid(a: FrobeniusAlgebra) -> None:
    report = validate(a)
    if not report.valid:
        raise InvalidAlgebra(report)


def pairing(a: FrobeniusAlgebra) -> ExactMatrix:
    """``g[i, j] = tau(e_i e_j)``."""
    n = a.dim
    c = a.structure_constants
    t = a.trace
    rows = [[sum((c[i, j, k] * t[k] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)]
    return ExactMatrix.from_rows(rows, cols=n)


def copairing(a: FrobeniusAlgebra) -> list[Fraction]:
    """The element ``sum g^{ij} e_i (x) e_j`` of ``V (x) V``; raises SingularMatrix."""
    ginv = mat_inverse(pairing(a))
    return list(ginv.entries)


def comultiplication(a: FrobeniusAlgebra) -> ExactMatrix:
    """``Delta = (m (x) id) o (id (x) copairing)`` as an ``n^2 x n`` matrix."""
    n = a.dim
    eye = ExactMatrix.identity(n)
    cop = ExactMatrix.column(copairing(a))
    return kron(a.mult_matrix(), eye) @ kron(eye, cop)


def handle_operator(a: FrobeniusAlgebra) -> ExactMatrix:
    """``m o Delta``: the torus with one incoming and one outgoing circle."""
    return a.mult_matrix() @ comultiplication(a)


def partition_function(a: FrobeniusAlgebra, genus: int) -> Fraction:
    """``tau(H^g(1))``; the sphere (g = 0) is ``tau(1)``."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    v = list(a.unit)
    if genus:
        h = handle_operator(a)
        for _ in range(genus):
            v = h.apply(v)
    return a.tau(v)


def is_semisimple(a: Algebra) -> bool:
    """Exact test: the trace form ``Tr(L_x L_y)`` is nondegenerate (char 0)."""
    n = a.dim
    ops = [a.left_mult(a.basis_vector(i)) for i in range(n)]
    form = ExactMatrix.from_rows([[(ops[i] @ ops[j]).trace() for j in range(n)] for i in range(n)],
                                 cols=n)
    return rank(form) == n


def _float_structure(a: Algebra) -> np.ndarray:
    n = a.dim
    return np.array([float(x) for x in a.structure_constants.entries]).reshape(n, n, n)


def semisimple_spectrum(a: FrobeniusAlgebra, seed: int = 0, attempts: int = 8) -> SemisimpleSpectrum:
    """Idempotents from eigenvectors of a generic multiplication operator.

    Semisimplicity is decided exactly first; the float eigenvectors are then
    rescaled to idempotents and polished by one Newton step ``3e^2 - 2e^3``.
    """
    if not a.commutative or a.commutativity_witness() is not None:
        raise ValueError("semisimple_spectrum needs a commutative algebra")
    if not is_semisimple(a):
        raise NotSemisimple("trace form of the regular representation is degenerate")
    n = a.dim
    c = _float_structure(a).astype(complex)
    trace = np.array([float(x) for x in a.trace])

    def mul(x, y):
        return np.einsum("i,j,ijk->k", x, y, c)

    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        v = rng.integers(-7, 8, size=n).astype(complex)
        mv = np.einsum("i,ijk->kj", v, c)
        _, vecs = np.linalg.eig(mv)
        idems = []
        for k in range(n):
            u = vecs[:, k]
            uu = mul(u, u)
            alpha = np.vdot(u, uu) / np.vdot(u, u)
            if abs(alpha) < 1e-12:
                break
            e = u / alpha
            e2 = mul(e, e)
            e = 3 * e2 - 2 * mul(e2, e)
            idems.append(e)
        if len(idems) != n:
            continue
        ok = all(np.linalg.norm(mul(e, e) - e) <= 1e-8 for e in idems) and all(
            np.linalg.norm(mul(idems[i], idems[j])) <= 1e-8
            for i in range(n) for j in range(n) if i != j)
        if not ok:
            continue
        lambdas = [complex(trace @ e) for e in idems]
        order = sorted(range(n), key=lambda k: (-lambdas[k].real, -lambdas[k].imag))
        lam = tuple(lambdas[k] for k in order)
        if any(abs(x) <= 1e-10 for x in lam):
            raise SingularMatrix("an idempotent has zero trace; the pairing is degenerate")
        vectors = np.array([idems[k] for k in order])
        return SemisimpleSpectrum(n, lam, vectors)
    raise NonConvergence("could not separate idempotents numerically")


def truncated_polynomial(k: int = 2, top_trace: int = 1) -> FrobeniusAlgebra:
    """``Q[x]/(x^k)`` with trace picking out the coefficient of ``x^(k-1)``."""

    def product(i, j):
        v = [0] * k
        if i + j < k:
            v[i + j] = 1
        return v

    base = Algebra.from_products(k, product, [1] + [0] * (k - 1),
                                 ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, k)])
    trace = [0] * (k - 1) + [top_trace]
    return FrobeniusAlgebra(k, base.structure_constants, base.unit, base.labels, tuple(trace))


def semisimple_from_idempotents(lambdas: Sequence, change_of_basis: ExactMatrix) -> FrobeniusAlgebra:
    """``Q^n`` with coordinatewise product and ``tau(f_i) = lambdas[i]``,
    written in the basis ``b_k = sum_i P[i, k] f_i`` for invertible ``P``."""
    n = len(lambdas)
    p = change_of_basis
    pinv = mat_inverse(p)
    lam = [to_scalar(x) for x in lambdas]

    def product(k, l):
        # f-coordinates of b_k * b_l, then back to b-coordinates
        f = [p[i, k] * p[i, l] for i in range(n)]
        return pinv.apply(f)

    unit = pinv.apply([Fraction(1)] * n)
    trace = [sum((lam[i] * p[i, k] for i in range(n)), Fraction(0)) for k in range(n)]
    base = Algebra.from_products(n, product, unit)
    return FrobeniusAlgebra(n, base.structure_constants, base.unit, base.labels, tuple(trace))


# -- file format --------------------------------------------------------------

def algebra_to_json(a: FrobeniusAlgebra) -> dict:
    return {
        "dim": a.dim,
        "labels": list(a.labels),
        "structure_constants": [[[scalar_str(x) for x in row] for row in plane]
                                for plane in a.structure_constants.to_nested()],
        "unit": [scalar_str(x) for x in a.unit],
        "trace": [scalar_str(x) for x in a.trace],
    }


def algebra_from_json(data: dict, commutative: bool = True) -> FrobeniusAlgebra:
    n = int(data["dim"])
    sc = ExactTensor.from_nested(data["structure_constants"], (n, n, n))
    trace = data.get("trace", [0] * n)
    return FrobeniusAlgebra(n, sc, tuple(to_scalar(x) for x in data["unit"]),
                            tuple(data.get("labels") or ()), tuple(to_scalar(x) for x in trace),
                            commutative)


def dumps_algebra(a: FrobeniusAlgebra) -> str:
    """Canonical text of the algebra file format (loads/dumps round-trips byte-exactly)."""
    return json.dumps(algebra_to_json(a), indent=2, ensure_ascii=False) + "\n"


def loads_algebra(text: str, commutative: bool = True) -> FrobeniusAlgebra:
    return algebra_from_json(json.loads(text), commutative)
