import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satotate.lattice import (
    RankMismatchError,
    WeightPoly,
    add,
    coefficient,
    coefficient_of_product,
    complete,
    dualize,
    elementary,
    embed,
    multiply,
    power,
    scale,
)

RANK = 2
coords = st.integers(-3, 3)
weights = st.tuples(coords, coords)
polys = st.dictionaries(weights, st.integers(-5, 5), max_size=6).map(lambda d: WeightPoly(d, rank=RANK))
genuine = st.lists(weights, min_size=1, max_size=5).map(lambda ws: WeightPoly.from_weights(ws, rank=RANK))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * WeightPoly.one(RANK) == p
    assert p + WeightPoly.zero(RANK) == p


@given(polys, polys)
def test_dual_is_a_ring_homomorphism(p, q):
    assert dualize(p * q) == dualize(p) * dualize(q)
    assert dualize(p + q) == dualize(p) + dualize(q)
    assert dualize(dualize(p)) == p


@given(polys, st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=40)
def test_power_additivity(p, j, k):
    assert power(p, j + k) == power(p, j) * power(p, k)


@given(genuine, st.integers(0, 5), st.integers(0, 3))
@settings(max_examples=40)
def test_bounded_power_is_exact_inside_window(p, k, bound):
    full = power(p, k)
    cut = power(p, k, bound=bound)
    for w in itertools.product(range(-bound, bound + 1), repeat=RANK):
        assert cut.coefficient(w) == full.coefficient(w)


@given(polys, polys, weights)
def test_coefficient_of_product(p, q, w):
    assert coefficient_of_product(p, q, w) == (p * q).coefficient(w)


@given(genuine, st.integers(0, 4))
def test_exterior_and_symmetric_powers_match_brute_force(p, k):
    ws = [w for w, c in p.items() for _ in range(c)]
    ext = WeightPoly(
        [(tuple(map(sum, zip(*combo))) if combo else (0, 0), 1) for combo in itertools.combinations(ws, k)], rank=RANK
    )
    sym = WeightPoly(
        [
            (tuple(map(sum, zip(*combo))) if combo else (0, 0), 1)
            for combo in itertools.combinations_with_replacement(range(len(ws)), k)
            for combo in [[ws[i] for i in combo]]
        ],
        rank=RANK,
    )
    assert elementary(p, k) == ext
    assert complete(p, k) == sym


def test_augmentation_multiplies():
    p = WeightPoly.from_weights([(1, 0), (0, 1), (0, 0)])
    assert (p * p * p).augmentation() == 27


def test_rank_mismatch_is_reported():
    p = WeightPoly.monomial((1,))
    q = WeightPoly.monomial((1, 0))
    with pytest.raises(RankMismatchError):
        add(p, q)
    with pytest.raises(RankMismatchError):
        multiply(p, q)
    with pytest.raises(RankMismatchError):
        coefficient(q, (1,))


def test_zero_coefficients_are_dropped():
    p = WeightPoly({(1,): 2, (2,): 0})
    assert dict(p.terms) == {(1,): 2}
    assert (p + scale(p, -1)).is_zero()


def test_big_integers_do_not_overflow():
    p = WeightPoly.from_weights([(0,)] * 1000)
    assert power(p, 20).coefficient((0,)) == 1000**20


def test_fold_reduces_last_coordinate():
    fold = lambda w: (w[0] % 3,)  # noqa: E731
    p = WeightPoly.monomial((1,))
    assert power(p, 4, fold=fold) == WeightPoly.monomial((1,))
    with pytest.raises(ValueError):
        power(p, 2, bound=1, fold=fold)


def test_embed_places_block():
    p = WeightPoly.from_weights([(1,), (2,)])
    assert embed(p, 3, 1) == WeightPoly.from_weights([(0, 1, 0), (0, 2, 0)])
    with pytest.raises(RankMismatchError):
        embed(p, 1, 1)


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        power(WeightPoly.one(1), -1)
