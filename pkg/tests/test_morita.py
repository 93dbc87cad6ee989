from fractions import Fraction

import pytest

from corpus import groups
from tqft.algebra import ground_field, matrix_algebra
from tqft.frobenius import truncated_polynomial
from tqft.gauge import builtin_group, convolution_algebra
from tqft.linalg import ExactMatrix, kron, mat_inverse, rank
from tqft.morita import (
    AlgebraMismatch,
    Bimodule,
    DualityData,
    NotIntertwiner,
    adjunction_from_ambient,
    bimodule_from_json,
    bimodule_to_json,
    check_adjunction,
    check_duality_data,
    column_bimodule,
    duality_from_json,
    enveloping_bimodules,
    hochschild_h0,
    hochschild_h0_relative,
    identity_bimodule,
    left_unitor,
    matrix_adjunction,
    opposite,
    relative_tensor,
    right_unitor,
    row_bimodule,
    same_algebra,
    standard_duality,
)


def corpus_bimodules():
    s3 = convolution_algebra(builtin_group("symmetric3"))
    right, left = enveloping_bimodules(matrix_algebra(2))
    return [identity_bimodule(s3), identity_bimodule(matrix_algebra(2)),
            identity_bimodule(truncated_polynomial(2).underlying()),
            column_bimodule(2), row_bimodule(2), column_bimodule(3), right, left]


def test_opposite():
    a = convolution_algebra(builtin_group("symmetric3"))
    op = opposite(a)
    assert op.axiom_violations() == []
    assert not same_algebra(op, a)
    assert same_algebra(opposite(op), a)
    c = truncated_polynomial(2).underlying()
    assert same_algebra(opposite(c), c)


def test_corpus_bimodules_valid():
    for b in corpus_bimodules():
        assert b.violations() == [], b.name


def test_broken_bimodule_detected():
    b = column_bimodule(2)
    mats = [b.left_matrix(i) for i in range(4)]
    mats[0] = ExactMatrix.identity(2)
    bad = Bimodule.from_matrices(b.left_algebra, b.right_algebra, mats,
                                 [ExactMatrix.identity(2)])
    assert "left associativity" in bad.violations()


def test_identity_tensor_identity():
    a = convolution_algebra(builtin_group("symmetric3"))
    i = identity_bimodule(a)
    assert relative_tensor(i, i).dim == a.dim


def test_unitors_are_isomorphisms():
    for b in corpus_bimodules():
        for unitor in (left_unitor, right_unitor):
            t, fwd, inv = unitor(b)
            assert t.dim == b.dim
            assert rank(fwd) == b.dim
            assert fwd @ inv == ExactMatrix.identity(b.dim)
            assert inv @ fwd == ExactMatrix.identity(b.dim)


def test_column_row_tensors():
    c, r = column_bimodule(2), row_bimodule(2)
    assert relative_tensor(r, c).dim == 1
    assert relative_tensor(c, r).dim == 4
    with pytest.raises(AlgebraMismatch):
        relative_tensor(c, c)


@pytest.mark.parametrize("g", groups(), ids=lambda g: g.name)
def test_hochschild_matches_classes(g):
    a = convolution_algebra(g)
    assert hochschild_h0(a) == g.conjugacy.count
    assert hochschild_h0_relative(a).dim == g.conjugacy.count


def test_hochschild_symmetric3_ambient():
    t = hochschild_h0_relative(convolution_algebra(builtin_group("symmetric3")))
    assert t.projection.cols == 36
    assert 36 - t.dim == 33


def test_hochschild_examples():
    assert hochschild_h0(matrix_algebra(2)) == 1
    assert hochschild_h0(matrix_algebra(3)) == 1
    assert hochschild_h0(truncated_polynomial(3).underlying()) == 3
    assert hochschild_h0(ground_field()) == 1


@pytest.mark.parametrize("n", range(7))
def test_standard_duality(n):
    assert check_duality_data(standard_duality(n)).passed


def test_duality_scalings():
    d = standard_duality(3)
    two = DualityData(3, 3, tuple(2 * x for x in d.coevaluation),
                      tuple(Fraction(1, 2) * x for x in d.evaluation))
    assert check_duality_data(two).passed
    one_sided = DualityData(3, 3, tuple(2 * x for x in d.coevaluation), d.evaluation)
    rep = check_duality_data(one_sided)
    assert not rep.passed
    assert rep.checks[0].detail["composite"][0][0] == "2"
    zero = DualityData(2, 2, (0, 0, 0, 0), d.evaluation[:4])
    assert not check_duality_data(zero).passed


def test_duality_json():
    d = duality_from_json({"object_dim": 2, "coevaluation": ["1", 0, 0, 1],
                           "evaluation": [1, 0, 0, 1]})
    assert check_duality_data(d).passed


def test_matrix_adjunction():
    adj = matrix_adjunction(2)
    assert check_adjunction(adj.f, adj.g, adj.unit, adj.counit).passed
    rep = check_adjunction(adj.f, adj.g, adj.unit, adj.counit.scale(2))
    assert not rep.passed
    assert rep.checks[0].detail["composite"] == [["2", "0"], ["0", "2"]]
    assert not check_adjunction(adj.f, adj.g, adj.unit.scale(2), adj.counit).passed
    assert check_adjunction(adj.f, adj.g, adj.unit.scale(2), adj.counit.scale(Fraction(1, 2))).passed
    assert check_adjunction(*_fields(matrix_adjunction(3))).passed


def _fields(adj):
    return adj.f, adj.g, adj.unit, adj.counit


def test_identity_adjunction():
    a = matrix_algebra(2)
    i = identity_bimodule(a)
    # unit a -> a (x) 1, counit multiplication
    unit = kron(ExactMatrix.identity(4), ExactMatrix.column(a.unit))
    adj = adjunction_from_ambient(i, i, unit, a.mult_matrix())
    assert check_adjunction(*_fields(adj)).passed


def test_non_intertwiner_rejected():
    adj = matrix_adjunction(2)
    bad = ExactMatrix.from_rows([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
    with pytest.raises(NotIntertwiner):
        check_adjunction(adj.f, adj.g, adj.unit, adj.counit @ bad)


def test_associator_invertible():
    from tqft.morita import associator, associator_inverse
    c, r = column_bimodule(2), row_bimodule(2)
    rc = relative_tensor(r, c)
    cr = relative_tensor(c, r)
    left = relative_tensor(cr, c)   # (c r) c
    right = relative_tensor(c, rc)  # c (r c)
    alpha = associator(left, right)
    beta = associator_inverse(left, right)
    assert alpha @ beta == ExactMatrix.identity(right.dim)
    assert beta @ alpha == ExactMatrix.identity(left.dim)
    assert mat_inverse(alpha) == beta


def test_bimodule_json_round_trip():
    for b in corpus_bimodules():
        c = bimodule_from_json(bimodule_to_json(b))
        assert c.left_action == b.left_action and c.right_action == b.right_action
        assert same_algebra(c.left_algebra, b.left_algebra)
