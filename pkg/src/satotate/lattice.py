"""Sparse Laurent polynomials on the weight lattice Z^r.

A :class:`WeightPoly` maps integer weight vectors to Python integers (so
coefficients never overflow).  It stands for a virtual character of a rank-r
torus: the polynomial ``sum c_w x^w``.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Optional, Tuple

Weight = Tuple[int, ...]
Fold = Callable[[Weight], Weight]


class RankMismatchError(ValueError):
    """Raised when two lattice objects of different rank are combined."""

    def __init__(self, left: int, right: int, what: str = "operands"):
        self.left = left
        self.right = right
        super().__init__(f"rank mismatch between {what}: {left} != {right}")


class WeightPoly:
    """Immutable sparse map ``Weight -> int`` with no zero coefficients."""

    __slots__ = ("_rank", "_terms", "_hash")

    def __init__(self, terms: Mapping[Weight, int] | Iterable[Tuple[Weight, int]] = (), rank: Optional[int] = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Weight, int] = {}
        for w, c in items:
            w = tuple(int(x) for x in w)
            if rank is None:
                rank = len(w)
            elif len(w) != rank:
                raise RankMismatchError(rank, len(w), "weight and polynomial")
            acc[w] = acc.get(w, 0) + int(c)
        if rank is None:
            raise ValueError("rank is required for an empty WeightPoly")
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        self._rank = rank
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "WeightPoly":
        # trusted constructor: keys already tuples of length rank, no zeros
        obj = cls.__new__(cls)
        obj._rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def one(cls, rank: int) -> "WeightPoly":
        return cls._raw(rank, {(0,) * rank: 1})

    @classmethod
    def zero(cls, rank: int) -> "WeightPoly":
        return cls._raw(rank, {})

    @classmethod
    def monomial(cls, weight: Iterable[int], coeff: int = 1) -> "WeightPoly":
        w = tuple(int(x) for x in weight)
        return cls({w: coeff}, rank=len(w))

    @classmethod
    def from_weights(cls, weights: Iterable[Iterable[int]], rank: Optional[int] = None) -> "WeightPoly":
        """Build the multiplicity polynomial of a weight multiset."""
        return cls(((tuple(w), 1) for w in weights), rank=rank)

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def terms(self) -> Mapping[Weight, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Weight]:
        return iter(sorted(self._terms))

    def items(self) -> list[Tuple[Weight, int]]:
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def coefficient(self, w: Iterable[int]) -> int:
        return coefficient(self, w)

    def is_zero(self) -> bool:
        return not self._terms

    def augmentation(self) -> int:
        """Sum of coefficients, i.e. the value at the identity of the torus."""
        return sum(self._terms.values())

    def reach(self) -> int:
        """Largest absolute coordinate over the support (0 for empty)."""
        return max((max(map(abs, w), default=0) for w in self._terms), default=0)

    def degrees(self, coords: Optional[slice] = None) -> Tuple[int, int]:
        """(min, max) of the coordinate sum over the support, restricted to ``coords``."""
        sl = coords if coords is not None else slice(None)
        sums = [sum(w[sl]) for w in self._terms]
        if not sums:
            raise ValueError("degrees of the zero polynomial")
        return min(sums), max(sums)

    def __eq__(self, other):
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._rank, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "WeightPoly") -> "WeightPoly":
        return add(self, other)

    def __mul__(self, other: "WeightPoly") -> "WeightPoly":
        return multiply(self, other)

    def __pow__(self, k: int) -> "WeightPoly":
        return power(self, k)

    def __repr__(self):
        body = ", ".join(f"{w}: {c}" for w, c in self.items())
        return f"WeightPoly(rank={self._rank}, {{{body}}})"


def _check_rank(p: WeightPoly, q: WeightPoly) -> None:
    if p.rank != q.rank:
        raise RankMismatchError(p.rank, q.rank)


def _within(w: Weight, bound: int) -> bool:
    for x in w:
        if x > bound or -x > bound:
            return False
    return True


def add(p: WeightPoly, q: WeightPoly) -> WeightPoly:
    _check_rank(p, q)
    acc = dict(p._terms)
    for w, c in q._terms.items():
        s = acc.get(w, 0) + c
        if s:
            acc[w] = s
        else:
            acc.pop(w, None)
    return WeightPoly._raw(p.rank, acc)


def scale(p: WeightPoly, c: int) -> WeightPoly:
    if not c:
        return WeightPoly.zero(p.rank)
    return WeightPoly._raw(p.rank, {w: c * v for w, v in p._terms.items()})


def multiply(p: WeightPoly, q: WeightPoly, bound: Optional[int] = None, fold: Optional[Fold] = None) -> WeightPoly:
    """Product of two lattice polynomials.

    ``bound`` drops result terms whose largest absolute coordinate exceeds it.
    ``fold`` maps every product weight to a canonical representative, which
    lets callers work on a quotient such as ``Z^r x Z/M``.
    """
    _check_rank(p, q)
    if len(p) > len(q):
        p, q = q, p
    acc: dict[Weight, int] = {}
    get = acc.get
    qi = list(q._terms.items())
    for u, cu in p._terms.items():
        for v, cv in qi:
            w = tuple(x + y for x, y in zip(u, v))
            if fold is not None:
                w = fold(w)
            if bound is not None and not _within(w, bound):
                continue
            acc[w] = get(w, 0) + cu * cv
    return WeightPoly._raw(p.rank, {w: c for w, c in acc.items() if c})


def dualize(p: WeightPoly, fold: Optional[Fold] = None) -> WeightPoly:
    """Negate every weight: the character of the dual representation."""
    if fold is None:
        return WeightPoly._raw(p.rank, {tuple(-x for x in w): c for w, c in p._terms.items()})
    acc: dict[Weight, int] = {}
    for w, c in p._terms.items():
        k = fold(tuple(-x for x in w))
        acc[k] = acc.get(k, 0) + c
    return WeightPoly._raw(p.rank, {w: c for w, c in acc.items() if c})


def power(p: WeightPoly, k: int, bound: Optional[int] = None, fold: Optional[Fold] = None) -> WeightPoly:
    """``p**k`` by incremental products.

    With ``bound``, the result is exact on every weight whose largest absolute
    coordinate is at most ``bound``; other terms may be missing.  Intermediate
    terms farther than ``bound + remaining * reach(p)`` from the origin cannot
    come back inside the window and are pruned as soon as they appear.
    """
    if k < 0:
        raise ValueError("power exponent must be nonnegative")
    result = WeightPoly.one(p.rank)
    if fold is not None:
        result = WeightPoly._raw(p.rank, {fold((0,) * p.rank): 1})
    if k == 0:
        return result
    if bound is not None and fold is not None:
        raise ValueError("bound and fold cannot be combined")
    r = p.reach()
    for step in range(1, k + 1):
        window = None if bound is None else bound + (k - step) * r
        result = multiply(result, p, bound=window, fold=fold)
    return result


def coefficient(p: WeightPoly, w: Iterable[int]) -> int:
    w = tuple(w)
    if len(w) != p.rank:
        raise RankMismatchError(p.rank, len(w), "polynomial and weight")
    return p._terms.get(w, 0)


def coefficient_of_product(p: WeightPoly, q: WeightPoly, w: Iterable[int]) -> int:
    """Coefficient of ``w`` in ``p * q`` without forming the product."""
    _check_rank(p, q)
    w = tuple(w)
    if len(p) > len(q):
        p, q = q, p
    qt = q._terms
    total = 0
    for u, cu in p._terms.items():
        cv = qt.get(tuple(x - y for x, y in zip(w, u)))
        if cv:
            total += cu * cv
    return total


def embed(p: WeightPoly, rank: int, offset: int) -> WeightPoly:
    """Place ``p`` in coordinates ``offset .. offset + p.rank`` of a rank-``rank`` lattice."""
    if offset < 0 or offset + p.rank > rank:
        raise RankMismatchError(rank, offset + p.rank, "target lattice and embedded block")
    pre, post = (0,) * offset, (0,) * (rank - offset - p.rank)
    return WeightPoly._raw(rank, {pre + w + post: c for w, c in p._terms.items()})


def elementary(p: WeightPoly, k: int, fold: Optional[Fold] = None) -> WeightPoly:
    """Exterior power of a genuine character with nonnegative multiplicities.

    DP over the sorted distinct weights: a weight of multiplicity m
    contributes ``C(m, i) x^{i w}`` to the i-th elementary layer.
    """
    return _layered(p, k, fold, exterior=True)


def complete(p: WeightPoly, k: int, fold: Optional[Fold] = None) -> WeightPoly:
    """Symmetric power of a genuine character (complete homogeneous DP)."""
    return _layered(p, k, fold, exterior=False)


def _layered(p: WeightPoly, k: int, fold: Optional[Fold], exterior: bool) -> WeightPoly:
    from math import comb

    if k < 0:
        raise ValueError("power index must be nonnegative")
    rank = p.rank
    zero = (0,) * rank
    if fold is not None:
        zero = fold(zero)
    layers = [WeightPoly._raw(rank, {zero: 1})] + [WeightPoly.zero(rank) for _ in range(k)]
    for w, m in p.items():
        if m < 0:
            raise ValueError("exterior/symmetric powers need nonnegative multiplicities")
        new = list(layers)
        for j in range(1, k + 1):
            acc = layers[j]
            top = min(m, j) if exterior else j
            for i in range(1, top + 1):
                c = comb(m, i) if exterior else comb(m + i - 1, i)
                if not c or layers[j - i].is_zero():
                    continue
                shift = tuple(i * x for x in w)
                mono = WeightPoly._raw(rank, {fold(shift) if fold else shift: c})
                acc = add(acc, multiply(layers[j - i], mono, fold=fold))
            new[j] = acc
        layers = new
    return layers[k]
