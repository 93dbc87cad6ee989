import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import GROUP_NAMES, groups
from tqft.evaluate import TwoDTheory, evaluate_2d
from tqft.bordism import open_surface_word
from tqft.frobenius import partition_function, validate
from tqft.gauge import (
    FiniteGroup,
    InvalidGroup,
    UnknownGroup,
    based_tuple_counts,
    builtin_group,
    center_frobenius_algebra,
    class_function_coordinates,
    class_indicator,
    convolution,
    convolution_algebra,
    count_homs,
    dw_trace,
    group_from_json,
    group_to_json,
    mednykh_verify,
    partition_function_counting,
    push_pull_map,
)


def brute_count(g, genus):
    """Every 2g-tuple, product of commutators computed from scratch."""
    total = 0
    for tup in itertools.product(range(g.order), repeat=2 * genus):
        x = g.identity
        for i in range(genus):
            a, b = tup[2 * i], tup[2 * i + 1]
            x = g.mul(x, g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
        total += x == g.identity
    return total


def brute_tuples(g, genus, p, q):
    counts = {}
    cls = g.conjugacy.class_of
    for tup in itertools.product(range(g.order), repeat=2 * genus + p + q):
        x = g.identity
        for i in range(genus):
            a, b = tup[2 * i], tup[2 * i + 1]
            x = g.mul(x, g.commutator(a, b))
        cs, ds = tup[2 * genus:2 * genus + p], tup[2 * genus + p:]
        for c in cs:
            x = g.mul(x, c)
        for d in ds:
            x = g.mul(x, g.inv(d))
        if x == g.identity:
            key = tuple(cls[c] for c in cs) + tuple(cls[d] for d in ds)
            counts[key] = counts.get(key, 0) + 1
    return counts


@pytest.mark.parametrize("name,order,classes", [
    ("cyclic5", 5, 5), ("symmetric3", 6, 3), ("dihedral4", 8, 5), ("quaternion8", 8, 5),
    ("symmetric4", 24, 5), ("symmetric5", 120, 7), ("dihedral3", 6, 3),
    ("cyclic2 x cyclic2", 4, 4), ("S3 x C2", 12, 6),
])
def test_builtin_groups(name, order, classes):
    g = builtin_group(name)
    assert g.order == order
    assert g.conjugacy.count == classes
    assert sum(g.conjugacy.class_sizes) == order
    assert g.conjugacy.class_of[g.identity] == 0


def test_quaternions_not_dihedral():
    q, d = builtin_group("quaternion8"), builtin_group("dihedral4")
    involutions = lambda g: sum(1 for x in range(g.order) if x != g.identity and g.mul(x, x) == g.identity)
    assert involutions(q) == 1 and involutions(d) == 5


def test_bad_groups():
    with pytest.raises(UnknownGroup):
        builtin_group("tetrahedral")
    with pytest.raises(UnknownGroup):
        builtin_group("symmetric6")
    with pytest.raises(InvalidGroup):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(InvalidGroup):
        FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_group_json_round_trip():
    g = builtin_group("quaternion8")
    h = group_from_json(group_to_json(g))
    assert h.table == g.table
    with pytest.raises(InvalidGroup):
        group_from_json({"order": 3, "table": [[0, 1], [1, 0]]})


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_count_homs_against_brute_force(name):
    g = builtin_group(name)
    for genus in (0, 1, 2):
        assert count_homs(g, genus) == brute_count(g, genus)


def test_count_homs_frozen_values():
    s3 = builtin_group("symmetric3")
    assert [count_homs(s3, g) for g in range(4)] == [1, 18, 486, 16038]
    assert count_homs(builtin_group("quaternion8"), 1) == 40
    for n in range(2, 7):
        assert count_homs(builtin_group(f"cyclic{n}"), 2) == n ** 4


def test_count_homs_independent_of_workers():
    g = builtin_group("dihedral4")
    assert count_homs(g, 3, workers=1) == count_homs(g, 3, workers=2) == count_homs(g, 3, workers=3)
    assert based_tuple_counts(g, 1, 1, 1, workers=1) == based_tuple_counts(g, 1, 1, 1, workers=2)


def test_partition_function_counting():
    assert partition_function_counting(builtin_group("symmetric3"), 2) == 81


@pytest.mark.parametrize("name", ["cyclic3", "symmetric3", "quaternion8"])
@pytest.mark.parametrize("genus,p,q", [(0, 1, 1), (0, 2, 1), (1, 1, 0), (0, 1, 2), (1, 0, 1)])
def test_based_tuple_counts_brute_force(name, genus, p, q):
    g = builtin_group(name)
    assert based_tuple_counts(g, genus, p, q) == brute_tuples(g, genus, p, q)


def test_center_algebra_is_class_function_convolution():
    g = builtin_group("symmetric3")
    z = center_frobenius_algebra(g)
    assert validate(z).valid
    k = g.conjugacy.count
    for i in range(k):
        for j in range(k):
            f = convolution(g, class_indicator(g, i), class_indicator(g, j))
            assert class_function_coordinates(g, f) == z.multiply(z.basis_vector(i), z.basis_vector(j))
        assert dw_trace(g, class_indicator(g, i)) == z.trace[i]


def test_symmetric3_class_products():
    g = builtin_group("symmetric3")
    z = center_frobenius_algebra(g)
    t, c = 1, 2  # transpositions, 3-cycles
    assert g.conjugacy.class_sizes == (1, 3, 2)
    assert z.multiply(z.basis_vector(t), z.basis_vector(t)) == [3, 0, 3]
    assert z.multiply(z.basis_vector(c), z.basis_vector(c)) == [2, 0, 1]


def test_convolution_algebra_center_dimension():
    for g in groups():
        a = convolution_algebra(g)
        assert a.axiom_violations() == []
        assert a.is_commutative() == g.is_abelian()


@pytest.mark.parametrize("name", ["cyclic4", "symmetric3", "dihedral4"])
def test_push_pull_generators(name):
    g = builtin_group(name)
    z = center_frobenius_algebra(g)
    k = g.conjugacy.count
    cap = push_pull_map(g, 0, 0, 1)
    assert cap.col_list(0) == list(z.unit)
    cup = push_pull_map(g, 0, 1, 0)
    assert cup.row_list(0) == list(z.trace)
    pants = push_pull_map(g, 0, 2, 1)
    for i in range(k):
        for j in range(k):
            f = convolution(g, class_indicator(g, i), class_indicator(g, j))
            assert pants.col_list(i * k + j) == class_function_coordinates(g, f)
    assert push_pull_map(g, 0, 1, 1).is_identity()


def test_push_pull_needs_boundary():
    with pytest.raises(ValueError):
        push_pull_map(builtin_group("cyclic2"), 1, 0, 0)


def test_push_pull_torus_with_boundary_matches_evaluation():
    g = builtin_group("quaternion8")
    t = TwoDTheory(center_frobenius_algebra(g))
    assert push_pull_map(g, 1, 1, 1) == evaluate_2d(t, open_surface_word(1, 1, 1))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(GROUP_NAMES), st.integers(0, 3))
def test_mednykh(name, genus):
    rep = mednykh_verify(builtin_group(name), genus)
    assert rep.passed, rep.values


def test_cyclic_center_lambdas():
    # idempotents of the class algebra of Z/n have trace 1/n^2, so Z_g = n^(2g-1)
    for n in range(2, 7):
        z = center_frobenius_algebra(builtin_group(f"cyclic{n}"))
        assert [partition_function(z, g) for g in range(4)] == [Fraction(n) ** (2 * g - 1) for g in range(4)]
