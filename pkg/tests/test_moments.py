from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from satotate.catalog import load, su2_finite_names
from satotate.errors import ConsistencyError, EvaluationError, UnsupportedError
from satotate.groups import (
    ClassDatum,
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteClasses,
    FiniteGiven,
    Product,
    SpecialUnitary,
    Std,
    Symmetric,
    Tensor,
    Torus,
    TorusWeights,
    Unitary,
    character,
    cyclic,
)
from satotate.moments import Engine, engine_for, moment, moment_table


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unitary_diagonal_matches_tableaux(n):
    eng = Engine(Unitary(n), Std())
    for a in range(9):
        assert eng.value(a, a) == oracles.unitary_diagonal(n, a)


def test_unitary_off_diagonal_vanishes():
    for a in range(6):
        for b in range(6):
            if a != b:
                assert moment(Unitary(3), Std(), a, b) == 0


def test_su2_matches_ballot_walks():
    eng = Engine(SpecialUnitary(2), Std())
    for a in range(12):
        for b in range(12 - a):
            assert eng.value(a, b) == oracles.ballot_walks(a + b)
            assert moment(SpecialUnitary(2), Std(), a, b) == eng.value(a, b)


def test_su2_examples():
    g, v = SpecialUnitary(2), Std()
    assert moment(g, v, 2, 2) == 2
    assert moment(g, v, 4, 0) == 2
    assert moment(g, v, 3, 3) == 5
    assert moment(g, v, 1, 0) == 0


def test_su3_determinant_invariants():
    g, v = SpecialUnitary(3), Std()
    assert moment(g, v, 3, 0) == 1
    assert moment(g, v, 6, 0) == oracles.syt_count((2, 2, 2))
    assert moment(g, v, 9, 0) == oracles.syt_count((3, 3, 3))
    # V* = Ext^2 V for SU(3); by Pieri only mu = (2,1,1) grows to (2,2,2) by a vertical 2-strip
    assert moment(g, v, 4, 1) == oracles.syt_count((2, 1, 1))


def test_u3_symmetric_square():
    g, v = Unitary(3), Symmetric(2, Std())
    assert moment(g, v, 1, 1) == 1
    assert moment(g, v, 2, 2) == 3


def test_u2_exterior_square_is_the_determinant():
    g, v = Unitary(2), Exterior(2, Std())
    for a in range(5):
        for b in range(5):
            assert moment(g, v, a, b) == int(a == b)


torus_weights = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=3)


@given(torus_weights, st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_torus_matches_brute_force(ws, a, b):
    assert moment(Torus(2), TorusWeights(ws), a, b) == oracles.brute_torus(ws, a, b)


def test_torus_two_standard_weights():
    # direct expansion gives 6 at (2, 2): pick an ordered pair on each side with equal multisets
    ws = [(1, 0), (0, 1)]
    assert oracles.brute_torus(ws, 2, 2) == 6
    assert moment(Torus(2), TorusWeights(ws), 2, 2) == 6


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_cyclic_is_congruence(n):
    for a in range(9):
        for b in range(9):
            assert moment(cyclic(n), FiniteGiven(), a, b) == oracles.cyclic_congruence(n, a, b)


@pytest.mark.parametrize("name", ["binary_dihedral(4)", "binary_dihedral(8)", "binary_dihedral(24)"] + su2_finite_names()[-3:])
def test_finite_groups_match_class_sum(name):
    g = load(name).group
    classes = [(c.size, c.exponents) for c in g.classes]
    for a in range(7):
        for b in range(7 - a):
            assert moment(g, FiniteGiven(), a, b) == oracles.class_sum(classes, g.modulus, a, b)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 10])
def test_binary_dihedral_data_matches_hand_classes(n):
    g = load(f"binary_dihedral({4 * n})").group
    hand, M = oracles.dihedral_classes(n)
    for a in range(6):
        for b in range(6 - a):
            assert moment(g, FiniteGiven(), a, b) == oracles.class_sum(hand, M, a, b)


def test_finite_derived_rep_matches_class_sum():
    g = load("binary_tetrahedral").group
    v = Symmetric(2, FiniteGiven())
    from satotate.groups import finite_rep_classes

    d = finite_rep_classes(g, v)
    classes = [(c.size, c.exponents) for c in d.classes]
    for a in range(4):
        for b in range(4):
            assert moment(g, v, a, b) == oracles.class_sum(classes, d.modulus, a, b)


def test_product_rule_and_joint_layout_agree():
    g = Product((SpecialUnitary(2), cyclic(6)))
    v = ExternalTensor((Std(), FiniteGiven()))
    eng = Engine(g, v)
    for a in range(8):
        for b in range(8):
            expected = oracles.ballot_walks(a + b) * oracles.cyclic_congruence(6, a, b)
            assert moment(g, v, a, b) == expected
            assert eng.value(a, b) == expected
    assert moment(g, v, 6, 0) == 5


def test_joint_layout_on_a_mixed_sum():
    # T x Z/3 acting by x*zeta + zeta^2 (not an external tensor at the top)
    g = Product((Torus(1), cyclic(3)))
    v = DirectSum(
        (
            ExternalTensor((TorusWeights([(1,)]), FiniteGiven())),
            ExternalTensor((TorusWeights([(0,)]), character(2))),
        )
    )
    chars = [((1,), 1), ((0,), 2)]
    for a in range(5):
        for b in range(5):
            assert moment(g, v, a, b) == oracles.brute_abelian(chars, 3, a, b)


def test_joint_layout_tensor_of_external_tensors():
    g = Product((Unitary(2), SpecialUnitary(2)))
    leg = ExternalTensor((Std(), Std()))
    v = Tensor((leg, Dual(leg)))
    # V (x) V* for U(2) x SU(2): dim End = 1 since leg is irreducible; F(1,1) = number of irreducibles squared
    assert moment(g, v, 1, 0) == 1
    assert moment(g, leg, 1, 1) == 1
    assert moment(g, leg, 2, 2) == moment(Unitary(2), Std(), 2, 2) * moment(SpecialUnitary(2), Std(), 2, 2)


@pytest.mark.parametrize(
    "g,v",
    [
        (Unitary(3), Symmetric(2, Std())),
        (SpecialUnitary(2), Std()),
        (cyclic(4), DirectSum((FiniteGiven(), character(2)))),
        (Torus(1), TorusWeights([(1,), (-1,), (2,)])),
    ],
)
def test_table_is_symmetric_and_bounded(g, v):
    t = moment_table(g, v, 4, 4)
    assert t.violations() == []
    assert t[(0, 0)] == 1


def test_parallel_table_equals_serial():
    g, v = Unitary(3), Std()
    assert moment_table(g, v, 5, 5, workers=4).entries == moment_table(g, v, 5, 5).entries


def test_rectangular_table():
    t = moment_table(SpecialUnitary(2), Std(), 5, 2)
    assert len(t.rows()) == 18
    assert t[(5, 1)] == oracles.ballot_walks(6)


def test_negative_index_rejected():
    with pytest.raises(EvaluationError):
        moment(Unitary(2), Std(), -1, 0)


def test_rank_bound_is_enforced():
    with pytest.raises(UnsupportedError):
        moment(Unitary(7), Std(), 1, 1)
    assert moment(Unitary(7), Std(), 1, 1, max_rank=7) == 1


def test_inconsistent_class_data_detected():
    # sizes sum to the order but the classes are not a group: F(1,0) = (1 + 2 zeta)/3
    g = FiniteClasses(3, (ClassDatum(1, (0,)), ClassDatum(2, (1,))), 3)
    with pytest.raises(ConsistencyError) as exc:
        moment(g, FiniteGiven(), 1, 0)
    assert exc.value.cell == (1, 0)


def test_memo_engine_uses_symmetry():
    e = engine_for(Unitary(2), Std())
    assert e.value(3, 3) == 5
    assert e.value(2, 5) == e.value(5, 2) == 0
    assert e.dim == 2


def test_gaussian_moments_for_large_rank():
    eng = Engine(Unitary(5), Std())
    assert [eng.value(a, a) for a in range(6)] == [factorial(a) for a in range(6)]
