"""The reference oracles agree with each other and with textbook values."""

from math import factorial

import pytest

import oracles


def hook_formula(shape):
    n = sum(shape)
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])]
    h = 1
    for i, r in enumerate(shape):
        for j in range(r):
            h *= (r - j) + (cols[j] - i) - 1
    return factorial(n) // h


@pytest.mark.parametrize("n", range(1, 10))
def test_recursive_syt_matches_hook_lengths(n):
    for p in oracles.partitions(n):
        assert oracles.syt_count(p) == hook_formula(p)


@pytest.mark.parametrize("a", range(0, 9))
def test_sum_of_squares_is_factorial(a):
    assert sum(oracles.syt_count(p) ** 2 for p in oracles.partitions(a)) == factorial(a)


def test_two_row_sum_is_catalan():
    for a in range(10):
        assert oracles.unitary_diagonal(2, a) == oracles.catalan(a)


def test_ballot_walks_even_lengths_are_catalan():
    for k in range(12):
        assert oracles.ballot_walks(2 * k) == oracles.catalan(k)
        assert oracles.ballot_walks(2 * k + 1) == 0


def test_brute_torus_small():
    # U(1) weight 1: only a == b contributes, with exactly one tuple
    assert oracles.brute_torus([(1,)], 3, 3) == 1
    assert oracles.brute_torus([(1,)], 3, 2) == 0
    # two weights 1: 2^a choices on each side
    assert oracles.brute_torus([(1,), (1,)], 2, 2) == 16


def test_hand_written_dihedral_classes_have_right_order():
    for n in range(1, 8):
        classes, _ = oracles.dihedral_classes(n)
        assert sum(s for s, _ in classes) == 4 * n
        assert len(classes) == n + 3
