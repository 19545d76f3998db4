from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satotate.errors import SpecError
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
    character_data,
    cyclic,
    describe_group,
    describe_rep,
    dimension,
    finite_rep_classes,
    layout_of,
    torus_restriction,
)

leaf = st.just(Std())


def reps(depth=2):
    base = st.just(Std())
    return st.recursive(
        base,
        lambda r: st.one_of(
            r.map(Dual),
            st.lists(r, min_size=1, max_size=2).map(lambda ps: DirectSum(tuple(ps))),
            st.lists(r, min_size=1, max_size=2).map(lambda ps: Tensor(tuple(ps))),
            st.tuples(st.integers(1, 2), r).map(lambda t: Exterior(*t)),
            st.tuples(st.integers(0, 2), r).map(lambda t: Symmetric(*t)),
        ),
        max_leaves=3,
    )


@given(reps())
def test_dimension_rules_match_character_data(v):
    g = Unitary(3)
    try:
        d = dimension(g, v)
    except SpecError:
        return  # an exterior power past the dimension
    assert character_data(g, v).dim == d


def test_dimension_formulas():
    g = Unitary(4)
    assert dimension(g, Exterior(2, Std())) == 6
    assert dimension(g, Symmetric(3, Std())) == comb(6, 3)
    assert dimension(g, Tensor((Std(), Dual(Std())))) == 16
    assert dimension(g, DirectSum((Std(), Std()))) == 8
    p = Product((SpecialUnitary(2), cyclic(3)))
    assert dimension(p, ExternalTensor((Std(), FiniteGiven()))) == 2


@pytest.mark.parametrize(
    "g,v",
    [
        (Torus(1), Std()),
        (Unitary(2), FiniteGiven()),
        (cyclic(3), TorusWeights([(1,)])),
        (Torus(2), TorusWeights([(1,)])),
        (Unitary(2), Exterior(3, Std())),
        (Unitary(2), ExternalTensor((Std(), Std()))),
        (Product((Unitary(2), cyclic(2))), Std()),
        (Product((Unitary(2), cyclic(2))), ExternalTensor((Std(),))),
    ],
)
def test_incompatible_pairs_raise(g, v):
    with pytest.raises(SpecError):
        dimension(g, v)


def test_error_carries_path():
    with pytest.raises(SpecError) as exc:
        dimension(Unitary(2), DirectSum((Std(), Tensor((Std(), FiniteGiven())))))
    assert exc.value.where == "rep.parts[1].parts[1]"


@pytest.mark.parametrize(
    "build",
    [
        lambda: Torus(0),
        lambda: Unitary(0),
        lambda: SpecialUnitary(1),
        lambda: FiniteClasses(4, (ClassDatum(1, (0,)), ClassDatum(2, (1,))), 4),
        lambda: FiniteClasses(4, (ClassDatum(1, (5,)),), 1),
        lambda: FiniteClasses(2, (ClassDatum(1, (1,)), ClassDatum(1, (1,))), 2),
        lambda: Product((Unitary(2),)),
        lambda: cyclic(0),
    ],
)
def test_bad_groups_rejected(build):
    with pytest.raises(SpecError):
        build()


def test_product_depth_limit():
    g = Unitary(1)
    for _ in range(4):
        g = Product((g, Unitary(1)))
    with pytest.raises(SpecError):
        Product((g, Unitary(1)))


def test_character_builds_one_dimensional_reps():
    g = cyclic(5)
    for k in range(-4, 5):
        data = finite_rep_classes(g, character(k))
        assert data.dim == 1
        assert [c.exponents[0] for c in data.classes] == [(k * j) % 5 for j in range(5)]


def test_torus_restriction_of_unitary():
    w = torus_restriction(Unitary(3), Exterior(2, Std()))
    assert w.dim == 3
    assert sorted(w.weights.terms) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_layout_of_product():
    lay = layout_of(Product((SpecialUnitary(2), Torus(1), cyclic(4), cyclic(6))))
    assert lay.cont_rank == 3
    assert lay.modulus == 12
    assert lay.order == 24
    assert [b.kind for b in lay.blocks] == ["special_unitary", "torus"]


def test_labels():
    assert describe_group(Product((Unitary(2), cyclic(3)))) == "U(2) x cyclic(3)"
    assert describe_rep(Dual(Symmetric(2, Std()))) == "Sym^2(Std)*"
