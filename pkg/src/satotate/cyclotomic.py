"""Integer cyclotomic arithmetic: Phi_M and reduction of Z[X]/(X^M - 1) to Z[zeta_M].

Polynomials are plain lists of ints, lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_divexact(p: Sequence[int], d: Sequence[int]) -> list[int]:
    """Exact division by a monic (or unit-leading) polynomial; raises if a remainder is left."""
    p = list(p)
    lead = d[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have unit leading coefficient")
    q = [0] * max(len(p) - len(d) + 1, 1)
    for i in range(len(p) - len(d), -1, -1):
        c = p[i + len(d) - 1] * lead
        q[i] = c
        if c:
            for j, b in enumerate(d):
                p[i + j] -= c * b
    if any(p):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Phi_m = prod_{d | m} (X^d - 1)^{mu(m/d)} with integer coefficients."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    num, den = [1], [1]
    for d in range(1, m + 1):
        if m % d:
            continue
        mu = mobius(m // d)
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = poly_mul(num, factor)
        elif mu == -1:
            den = poly_mul(den, factor)
    return tuple(poly_divexact(num, den))


def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def poly_mod(p: Sequence[int], d: Sequence[int]) -> list[int]:
    """Remainder of ``p`` modulo the monic ``d`` (length ``len(d) - 1``)."""
    p = list(p)
    n = len(d) - 1
    for i in range(len(p) - 1, n - 1, -1):
        c = p[i]
        if c:
            for j in range(n + 1):
                p[i - n + j] -= c * d[j]
    out = p[:n] + [0] * max(0, n - len(p))
    return out


@lru_cache(maxsize=None)
def power_basis_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the coordinates of zeta_m^e in the power basis of Z[zeta_m], for 0 <= e < m."""
    phi = cyclotomic_poly(m)
    rows = []
    for e in range(m):
        mono = [0] * e + [1]
        rows.append(tuple(poly_mod(mono, phi)))
    return tuple(rows)


def reduce_cyclic(vec: Sequence[int], m: int) -> list[int]:
    """Map an element of Z[X]/(X^m - 1), given as m coefficients, into Z[zeta_m]."""
    if len(vec) != m:
        raise ValueError(f"expected {m} coefficients, got {len(vec)}")
    table = power_basis_table(m)
    out = [0] * (len(cyclotomic_poly(m)) - 1)
    for e, c in enumerate(vec):
        if c:
            for i, t in enumerate(table[e]):
                if t:
                    out[i] += c * t
    return out


class CyclotomicField:
    """Exact arithmetic in Z[zeta_N] scaled by a fixed denominator.

    Elements are tuples of phi(N) integers in the power basis.  Used to
    re-verify finite subgroup data without floating point.
    """

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_poly(n)
        self.dim = len(self.phi) - 1
        self.table = power_basis_table(n)

    def zeta(self, k: int) -> tuple[int, ...]:
        return self.table[k % self.n]

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def scale(self, x, c: int):
        return tuple(c * a for a in x)

    def mul(self, x, y):
        return tuple(poly_mod(poly_mul(x, y), self.phi))

    def conj(self, x):
        acc = [0] * self.dim
        for k, c in enumerate(x):
            if c:
                for i, t in enumerate(self.zeta(-k)):
                    acc[i] += c * t
        return tuple(acc)

    def zero(self):
        return (0,) * self.dim

    def one(self):
        return self.zeta(0)

    def to_complex(self, x) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**k for k, c in enumerate(x))
