"""Algebras, bimodules and intertwiners: the finite Morita 2-category.

A bimodule ``M`` over ``(A, B)`` stores its actions as tensors

    a_i . m_j = sum_k left_action[i, j, k] m_k
    m_j . b_i = sum_k right_action[j, i, k] m_k

Composition is the relative tensor product, realised as an explicit quotient
of the ordinary tensor product; it is not strictly associative, so
associators and unitors are built as honest matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, ground_field, matrix_algebra
from .frobenius import algebra_from_json
from .linalg import (
    ExactMatrix,
    ExactTensor,
    kron,
    quotient_with_section,
    rank,
    scalar_str,
    to_scalar,
)
from .reports import Check, VerificationReport


class AlgebraMismatch(ValueError):
    pass


class NotIntertwiner(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


def same_algebra(a: Algebra, b: Algebra) -> bool:
    return (a.dim == b.dim and a.structure_constants == b.structure_constants
            and a.unit == b.unit)


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


@dataclass(frozen=True)
class Bimodule:
    left_algebra: Algebra
    right_algebra: Algebra
    dim: int
    left_action: ExactTensor
    right_action: ExactTensor
    name: str = ""

    def __post_init__(self):
        a, b, n = self.left_algebra.dim, self.right_algebra.dim, self.dim
        if self.left_action.shape != (a, n, n):
            raise ValueError(f"left action must have shape {(a, n, n)}, got {self.left_action.shape}")
        if self.right_action.shape != (n, b, n):
            raise ValueError(f"right action must have shape {(n, b, n)}, got {self.right_action.shape}")

    @classmethod
    def from_matrices(cls, left: Algebra, right: Algebra, left_mats: Sequence[ExactMatrix],
                      right_mats: Sequence[ExactMatrix], name: str = "") -> "Bimodule":
        """From the matrices of ``m -> a_i . m`` and ``m -> m . b_i``."""
        n = left_mats[0].rows if left_mats else right_mats[0].rows
        la = tuple(mat[k, j] for mat in left_mats for j in range(n) for k in range(n))
        ra = tuple(right_mats[i][k, j] for j in range(n) for i in range(right.dim) for k in range(n))
        return cls(left, right, n, ExactTensor((left.dim, n, n), la),
                   ExactTensor((n, right.dim, n), ra), name)

    def left_matrix(self, i: int) -> ExactMatrix:
        n, t = self.dim, self.left_action
        return ExactMatrix(n, n, tuple(t[i, j, k] for k in range(n) for j in range(n)))

    def right_matrix(self, i: int) -> ExactMatrix:
        n, t = self.dim, self.right_action
        return ExactMatrix(n, n, tuple(t[j, i, k] for k in range(n) for j in range(n)))

    def left_action_map(self) -> ExactMatrix:
        """``A (x) M -> M``."""
        a, n, t = self.left_algebra.dim, self.dim, self.left_action
        return ExactMatrix(n, a * n, tuple(t[i, j, k] for k in range(n)
                                           for i in range(a) for j in range(n)))

    def right_action_map(self) -> ExactMatrix:
        """``M (x) B -> M``."""
        b, n, t = self.right_algebra.dim, self.dim, self.right_action
        return ExactMatrix(n, n * b, tuple(t[j, i, k] for k in range(n)
                                           for j in range(n) for i in range(b)))

    def violations(self) -> list[str]:
        a, b = self.left_algebra, self.right_algebra
        n = self.dim
        eye = ExactMatrix.identity(n)
        lam, rho = self.left_action_map(), self.right_action_map()
        out = []
        if lam @ kron(ExactMatrix.column(a.unit), eye) != eye:
            out.append("left unit")
        if rho @ kron(eye, ExactMatrix.column(b.unit)) != eye:
            out.append("right unit")
        if lam @ kron(a.mult_matrix(), eye) != lam @ kron(ExactMatrix.identity(a.dim), lam):
            out.append("left associativity")
        if rho @ kron(eye, b.mult_matrix()) != rho @ kron(rho, ExactMatrix.identity(b.dim)):
            out.append("right associativity")
        if rho @ kron(lam, ExactMatrix.identity(b.dim)) != lam @ kron(ExactMatrix.identity(a.dim), rho):
            out.append("actions commute")
        return out

    def is_valid(self) -> bool:
        return not self.violations()


@dataclass(frozen=True)
class RelativeTensor(Bimodule):
    """``outer (x)_A inner`` with its quotient data.

    ``projection`` maps the ambient ``outer (x) inner`` onto the quotient and
    ``section`` is a linear splitting, ``projection @ section = 1``.
    """

    outer: Bimodule | None = None
    inner: Bimodule | None = None
    projection: ExactMatrix | None = None
    section: ExactMatrix | None = None


def identity_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.dim, a.structure_constants, a.structure_constants, "id")


def relative_tensor(b2: Bimodule, b1: Bimodule) -> RelativeTensor:
    """``b2 (x)_{A1} b1`` for ``b2`` over ``(A2, A1)`` and ``b1`` over ``(A1, A0)``."""
    mid = b2.right_algebra
    if not same_algebra(mid, b1.left_algebra):
        raise AlgebraMismatch(f"cannot tensor over different algebras "
                              f"(dims {mid.dim} and {b1.left_algebra.dim})")
    n2, n1 = b2.dim, b1.dim
    ambient = n2 * n1
    rel = []
    for m in range(n2):
        for a in range(mid.dim):
            ma = [b2.right_action[m, a, k] for k in range(n2)]
            for n in range(n1):
                an = [b1.left_action[a, n, k] for k in range(n1)]
                v = [Fraction(0)] * ambient
                for k, x in enumerate(ma):
                    if x:
                        v[k * n1 + n] += x
                for k, x in enumerate(an):
                    if x:
                        v[m * n1 + k] -= x
                if any(v):
                    rel.append(v)
    proj, sect, d = quotient_with_section(ambient, rel)
    eye1, eye2 = ExactMatrix.identity(n1), ExactMatrix.identity(n2)
    left = [proj @ kron(b2.left_matrix(i), eye1) @ sect for i in range(b2.left_algebra.dim)]
    right = [proj @ kron(eye2, b1.right_matrix(i)) @ sect for i in range(b1.right_algebra.dim)]
    la = tuple(m[k, j] for m in left for j in range(d) for k in range(d))
    ra = tuple(right[i][k, j] for j in range(d) for i in range(len(right)) for k in range(d))
    name = f"({b2.name or '?'}⊗{b1.name or '?'})"
    return RelativeTensor(b2.left_algebra, b1.right_algebra, d,
                          ExactTensor((b2.left_algebra.dim, d, d), la),
                          ExactTensor((d, b1.right_algebra.dim, d), ra),
                          name, b2, b1, proj, sect)


def induced_map(source: RelativeTensor, target: RelativeTensor,
                left: ExactMatrix, right: ExactMatrix) -> ExactMatrix:
    """``left (x) right`` descended to the quotients (both must be bimodule maps)."""
    return target.projection @ kron(left, right) @ source.section


def left_unitor(x: Bimodule) -> tuple[RelativeTensor, ExactMatrix, ExactMatrix]:
    """``A (x)_A X -> X`` and its inverse."""
    t = relative_tensor(identity_bimodule(x.left_algebra), x)
    fwd = x.left_action_map() @ t.section
    inv = t.projection @ kron(ExactMatrix.column(x.left_algebra.unit), ExactMatrix.identity(x.dim))
    return t, fwd, inv


def right_unitor(x: Bimodule) -> tuple[RelativeTensor, ExactMatrix, ExactMatrix]:
    """``X (x)_B B -> X`` and its inverse."""
    t = relative_tensor(x, identity_bimodule(x.right_algebra))
    fwd = x.right_action_map() @ t.section
    inv = t.projection @ kron(ExactMatrix.identity(x.dim), ExactMatrix.column(x.right_algebra.unit))
    return t, fwd, inv


def associator(xy_z: RelativeTensor, x_yz: RelativeTensor) -> ExactMatrix:
    """``(X (x) Y) (x) Z -> X (x) (Y (x) Z)`` through representatives."""
    xy, yz = xy_z.outer, x_yz.inner
    x, z = x_yz.outer, xy_z.inner
    return (x_yz.projection @ kron(ExactMatrix.identity(x.dim), yz.projection)
            @ kron(xy.section, ExactMatrix.identity(z.dim)) @ xy_z.section)


def associator_inverse(xy_z: RelativeTensor, x_yz: RelativeTensor) -> ExactMatrix:
    xy, yz = xy_z.outer, x_yz.inner
    x, z = x_yz.outer, xy_z.inner
    return (xy_z.projection @ kron(xy.projection, ExactMatrix.identity(z.dim))
            @ kron(ExactMatrix.identity(x.dim), yz.section) @ x_yz.section)


def intertwining_defects(source: Bimodule, target: Bimodule, phi: ExactMatrix) -> list[dict]:
    """Basis elements whose action fails to commute with ``phi``."""
    if phi.shape != (target.dim, source.dim):
        raise ValueError(f"map has shape {phi.shape}, expected {(target.dim, source.dim)}")
    out = []
    for i in range(source.left_algebra.dim):
        if phi @ source.left_matrix(i) != target.left_matrix(i) @ phi:
            out.append({"side": "left", "basis": i})
    for i in range(source.right_algebra.dim):
        if phi @ source.right_matrix(i) != target.right_matrix(i) @ phi:
            out.append({"side": "right", "basis": i})
    return out


def hochschild_h0(a: Algebra) -> int:
    """``dim A/[A, A]`` from the span of basis commutators."""
    n = a.dim
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            x = a.multiply(a.basis_vector(i), a.basis_vector(j))
            y = a.multiply(a.basis_vector(j), a.basis_vector(i))
            vecs.append([p - q for p, q in zip(x, y)])
    return n - rank(ExactMatrix.from_rows(vecs, cols=n)) if vecs else n


def enveloping_bimodules(a: Algebra) -> tuple[Bimodule, Bimodule]:
    """``A`` as a right and as a left module over ``A (x) A°``.

    Right: ``m . (x (x) y°) = y m x``; left: ``(x (x) y°) . n = x n y``.
    """
    n = a.dim
    env = a.tensor(a.opposite())
    k = ground_field()
    basis = [a.basis_vector(i) for i in range(n)]

    def mat(fn):
        cols = [fn(e) for e in basis]
        return ExactMatrix.from_rows(cols, cols=n).transpose()

    right_mats, left_mats = [], []
    for idx in range(env.dim):
        xi, yi = divmod(idx, n)
        x, y = basis[xi], basis[yi]
        right_mats.append(mat(lambda m: a.multiply(a.multiply(y, m), x)))
        left_mats.append(mat(lambda m: a.multiply(a.multiply(x, m), y)))
    scalar = [ExactMatrix.identity(n)]
    right = Bimodule.from_matrices(k, env, scalar, right_mats, "A")
    left = Bimodule.from_matrices(env, k, left_mats, scalar, "A")
    return right, left


def hochschild_h0_relative(a: Algebra) -> RelativeTensor:
    """``A (x)_{A (x) A°} A``; its dimension equals :func:`hochschild_h0`."""
    right, left = enveloping_bimodules(a)
    return relative_tensor(right, left)


# -- duality data -----------------------------------------------------------------

@dataclass(frozen=True)
class DualityData:
    """``coevaluation`` lives in ``x (x) x'`` (index ``i * dual_dim + j``),
    ``evaluation`` is a covector on ``x' (x) x`` (index ``j * object_dim + i``)."""

    object_dim: int
    dual_dim: int
    coevaluation: tuple[Fraction, ...]
    evaluation: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coevaluation", tuple(to_scalar(x) for x in self.coevaluation))
        object.__setattr__(self, "evaluation", tuple(to_scalar(x) for x in self.evaluation))
        size = self.object_dim * self.dual_dim
        if len(self.coevaluation) != size or len(self.evaluation) != size:
            raise ValueError(f"coevaluation and evaluation need {size} entries")


def standard_duality(n: int) -> DualityData:
    v = tuple(Fraction(int(k % (n + 1) == 0)) for k in range(n * n))
    return DualityData(n, n, v, v)


def _matrix_strings(m: ExactMatrix) -> list[list[str]]:
    return [[scalar_str(x) for x in row] for row in m.to_lists()]


def check_duality_data(d: DualityData) -> VerificationReport:
    """Both S-shaped composites must be identities."""
    n, m = d.object_dim, d.dual_dim
    coev = ExactMatrix.column(d.coevaluation)
    ev = ExactMatrix.row(d.evaluation)
    ix, ixd = ExactMatrix.identity(n), ExactMatrix.identity(m)
    s_obj = kron(ix, ev) @ kron(coev, ix)
    s_dual = kron(ev, ixd) @ kron(ixd, coev)
    checks = []
    for name, comp in (("object zigzag", s_obj), ("dual zigzag", s_dual)):
        ok = comp.is_identity()
        detail = {} if ok else {"composite": _matrix_strings(comp)}
        checks.append(Check(name, ok, detail))
    return VerificationReport(f"duality data ({n}, {m})", tuple(checks))


# -- adjunctions ------------------------------------------------------------------

@dataclass(frozen=True)
class AdjunctionData:
    """``unit: A0 -> g (x)_{A1} f`` and ``counit: f (x)_{A0} g -> A1`` in quotient coordinates."""

    f: Bimodule
    g: Bimodule
    unit: ExactMatrix
    counit: ExactMatrix


def adjunction_from_ambient(f: Bimodule, g: Bimodule, unit: ExactMatrix,
                            counit: ExactMatrix) -> AdjunctionData:
    """Accept the unit and counit on the ordinary tensor products ``g (x) f``, ``f (x) g``."""
    gf, fg = relative_tensor(g, f), relative_tensor(f, g)
    return AdjunctionData(f, g, gf.projection @ unit, counit @ fg.section)


def check_adjunction(f: Bimodule, g: Bimodule, unit: ExactMatrix,
                     counit: ExactMatrix) -> VerificationReport:
    """Triangle identities for ``f`` over ``(A1, A0)`` left adjoint to ``g`` over ``(A0, A1)``.

    ``unit: A0 -> g (x)_{A1} f`` and ``counit: f (x)_{A0} g -> A1`` are in
    quotient coordinates; both are checked to be bimodule maps first.
    """
    a1, a0 = f.left_algebra, f.right_algebra
    if not (same_algebra(g.left_algebra, a0) and same_algebra(g.right_algebra, a1)):
        raise AlgebraMismatch("g must be a bimodule over (A0, A1) when f is over (A1, A0)")
    id0, id1 = identity_bimodule(a0), identity_bimodule(a1)
    gf, fg = relative_tensor(g, f), relative_tensor(f, g)
    for label, src, tgt, phi in (("unit", id0, gf, unit), ("counit", fg, id1, counit)):
        bad = intertwining_defects(src, tgt, phi)
        if bad:
            raise NotIntertwiner(f"{label} does not commute with the actions", {"defects": bad})

    # f -> f A0 -> f (g f) -> (f g) f -> A1 f -> f
    f_0, _, r_f_inv = right_unitor(f)
    f_gf = relative_tensor(f, gf)
    fg_f = relative_tensor(fg, f)
    one_f, l_f, _ = left_unitor(f)
    step1 = induced_map(f_0, f_gf, ExactMatrix.identity(f.dim), unit)
    step3 = induced_map(fg_f, one_f, counit, ExactMatrix.identity(f.dim))
    first = l_f @ step3 @ associator_inverse(fg_f, f_gf) @ step1 @ r_f_inv

    # g -> A0 g -> (g f) g -> g (f g) -> g A1 -> g
    zero_g, _, l_g_inv = left_unitor(g)
    gf_g = relative_tensor(gf, g)
    g_fg = relative_tensor(g, fg)
    g_1, r_g, _ = right_unitor(g)
    step1 = induced_map(zero_g, gf_g, unit, ExactMatrix.identity(g.dim))
    step3 = induced_map(g_fg, g_1, ExactMatrix.identity(g.dim), counit)
    second = r_g @ step3 @ associator(gf_g, g_fg) @ step1 @ l_g_inv

    checks = []
    for name, comp in (("f triangle", first), ("g triangle", second)):
        ok = comp.is_identity()
        checks.append(Check(name, ok, {} if ok else {"composite": _matrix_strings(comp)}))
    return VerificationReport("adjunction", tuple(checks),
                              {"dims": {"f": f.dim, "g": g.dim, "gf": gf.dim, "fg": fg.dim}})


# -- the M2 example ---------------------------------------------------------------

def column_bimodule(n: int = 2) -> Bimodule:
    """``Q^n`` as an ``(M_n, Q)``-bimodule."""
    mn = matrix_algebra(n)
    mats = []
    for i in range(n):
        for j in range(n):
            rows = [[int(r == i and c == j) for c in range(n)] for r in range(n)]
            mats.append(ExactMatrix.from_rows(rows, cols=n))
    return Bimodule.from_matrices(mn, ground_field(), mats, [ExactMatrix.identity(n)], "col")


def row_bimodule(n: int = 2) -> Bimodule:
    """Row vectors ``Q^n`` as a ``(Q, M_n)``-bimodule: ``e_k . E_ij = [k = i] e_j``."""
    mn = matrix_algebra(n)
    mats = []
    for i in range(n):
        for j in range(n):
            rows = [[int(r == j and c == i) for c in range(n)] for r in range(n)]
            mats.append(ExactMatrix.from_rows(rows, cols=n))
    return Bimodule.from_matrices(ground_field(), mn, [ExactMatrix.identity(n)], mats, "row")


def matrix_adjunction(n: int = 2) -> AdjunctionData:
    """Column ⊣ row over ``M_n``.

    Unit ``1 -> (1/n) sum_k e_k (x) e_k`` in ``row (x) col``; counit
    ``e_i (x) e_j -> E_ij`` (matrix multiplication).
    """
    f, g = column_bimodule(n), row_bimodule(n)
    unit = ExactMatrix.column([Fraction(int(k % (n + 1) == 0), n) for k in range(n * n)])
    counit = ExactMatrix.identity(n * n)
    return adjunction_from_ambient(f, g, unit, counit)


# -- file format ------------------------------------------------------------------

def _algebra_from_spec(spec) -> Algebra:
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("ground", "field", "q", "triv"):
            return ground_field()
        if s.startswith("matrix"):
            return matrix_algebra(int(s[len("matrix"):]))
        raise ValueError(f"unknown algebra {spec!r}")
    return algebra_from_json(spec, commutative=False).underlying()


def _algebra_to_json(a: Algebra) -> dict:
    return {
        "dim": a.dim,
        "labels": list(a.labels),
        "structure_constants": [[[scalar_str(x) for x in row] for row in plane]
                                for plane in a.structure_constants.to_nested()],
        "unit": [scalar_str(x) for x in a.unit],
    }


def bimodule_from_json(data: dict) -> Bimodule:
    left = _algebra_from_spec(data["left_algebra"])
    right = _algebra_from_spec(data["right_algebra"])
    n = int(data["dim"])
    la = ExactTensor.from_nested(data["left_action"], (left.dim, n, n))
    ra = ExactTensor.from_nested(data["right_action"], (n, right.dim, n))
    return Bimodule(left, right, n, la, ra, data.get("name", ""))


def bimodule_to_json(b: Bimodule) -> dict:
    def nested(t):
        return [[[scalar_str(x) for x in row] for row in plane] for plane in t.to_nested()]

    return {
        "name": b.name,
        "left_algebra": _algebra_to_json(b.left_algebra),
        "right_algebra": _algebra_to_json(b.right_algebra),
        "dim": b.dim,
        "left_action": nested(b.left_action),
        "right_action": nested(b.right_action),
    }


def duality_from_json(data: dict) -> DualityData:
    return DualityData(int(data["object_dim"]), int(data.get("dual_dim", data["object_dim"])),
                       tuple(data["coevaluation"]), tuple(data["evaluation"]))


def adjunction_from_json(data: dict) -> AdjunctionData:
    """``{"f", "g", "unit", "counit"}``; matrices in ambient (unreduced) coordinates."""
    f, g = bimodule_from_json(data["f"]), bimodule_from_json(data["g"])
    unit = ExactMatrix.from_rows([[to_scalar(x) for x in r] for r in data["unit"]],
                                 cols=f.right_algebra.dim)
    counit = ExactMatrix.from_rows([[to_scalar(x) for x in r] for r in data["counit"]],
                                   cols=f.dim * g.dim)
    return adjunction_from_ambient(f, g, unit, counit)
