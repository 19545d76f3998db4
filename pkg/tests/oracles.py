"""Independent reference computations.

Nothing here imports the engine.  Each function counts invariants by a
different route: tableaux recursion, lattice walks, brute-force expansion
over weights, or a floating-point class sum.
"""

import cmath
import itertools
from functools import lru_cache
from math import comb


def partitions(n, max_part=None):
    max_part = n if max_part is None else max_part
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, max_part), 0, -1):
        out += [(k,) + rest for rest in partitions(n - k, k)]
    return out


@lru_cache(maxsize=None)
def syt_count(shape):
    """Standard Young tableaux of ``shape`` by removing the cell holding the largest entry."""
    shape = tuple(r for r in shape if r)
    if not shape:
        return 1
    total = 0
    for i, r in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if r > below:  # removable corner
            total += syt_count(shape[:i] + (r - 1,) + shape[i + 1 :])
    return total


def unitary_diagonal(n, a):
    """sum over partitions of a with at most n rows of (f^lambda)^2."""
    return sum(syt_count(p) ** 2 for p in partitions(a) if len(p) <= n)


def ballot_walks(steps, end=0):
    """+-1 walks on the nonnegative integers from 0 to ``end`` in ``steps`` steps."""
    row = {0: 1}
    for _ in range(steps):
        nxt = {}
        for h, c in row.items():
            for s in (h - 1, h + 1):
                if s >= 0:
                    nxt[s] = nxt.get(s, 0) + c
        row = nxt
    return row.get(end, 0)


def catalan(k):
    return comb(2 * k, k) // (k + 1)


def brute_torus(weights, a, b):
    """Count tuples (w_1..w_a, u_1..u_b) with sum w - sum u = 0 by direct enumeration."""
    r = len(weights[0])
    count = 0
    for pos in itertools.product(weights, repeat=a):
        s = [sum(w[i] for w in pos) for i in range(r)]
        for neg in itertools.product(weights, repeat=b):
            if all(s[i] == sum(u[i] for u in neg) for i in range(r)):
                count += 1
    return count


def class_sum(classes, modulus, a, b):
    """(1/|G|) sum over classes of size * tr^a * conj(tr)^b in floating point, rounded."""
    order = sum(size for size, _ in classes)
    total = 0j
    for size, exps in classes:
        tr = sum(cmath.exp(2j * cmath.pi * e / modulus) for e in exps)
        total += size * tr**a * tr.conjugate() ** b
    val = total / order
    n = round(val.real)
    assert abs(val - n) < 1e-6, (val, a, b)
    return n


def cyclic_congruence(n, a, b):
    return int((a - b) % n == 0)


def dihedral_classes(n):
    """Conjugacy-class eigenphases of binary_dihedral(4n), written down by hand (modulus 2n).

    Elements are x^k (k = 0..2n-1) and x^k y.  x^k and x^-k are conjugate;
    the 2n elements x^k y split into two classes of size n with eigenphases
    +-i, i.e. exponents n/2 and -n/2 on the modulus 2n scale, which needs n even.
    Working on modulus 4n avoids that case split.
    """
    M = 4 * n
    classes = [(1, (0, 0)), (1, (2 * n, 2 * n))]
    for k in range(1, n):
        classes.append((2, (2 * k, M - 2 * k)))
    classes += [(n, (n, 3 * n)), (n, (n, 3 * n))]
    return classes, M


def brute_abelian(chars, modulus, a, b):
    """F for a torus x cyclic group acting by a sum of characters.

    ``chars`` lists (torus weight, phase exponent mod ``modulus``).  Averaging
    over the group keeps exactly the tuples whose torus weights cancel and
    whose phases sum to 0 mod ``modulus``.
    """
    r = len(chars[0][0])
    count = 0
    for pos in itertools.product(chars, repeat=a):
        for neg in itertools.product(chars, repeat=b):
            w = [sum(c[0][i] for c in pos) - sum(c[0][i] for c in neg) for i in range(r)]
            ph = sum(c[1] for c in pos) - sum(c[1] for c in neg)
            if not any(w) and ph % modulus == 0:
                count += 1
    return count
