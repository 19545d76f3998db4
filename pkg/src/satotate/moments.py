"""Exact Sato-Tate functions F(a, b) = dim (V^{(x)a} (x) V*^{(x)b})^G.

Three evaluators cover the supported groups:

* tori: constant term of the torus character of V^a (x) V*^b;
* U(n) / SU(n): Weyl-group alternation of the weight multiplicities at the
  n! points sigma(rho) - rho (plus det^k shifts for SU(n));
* finite groups: class-size weighted character sums, evaluated exactly in
  Z[zeta_M] after reducing modulo the cyclotomic polynomial.

A general engine over the joint layout of :mod:`satotate.groups` handles
products (and anything else) and backs :func:`moment_table`.
"""

from __future__ import annotations

import itertools
import threading
from math import prod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cyclotomic import reduce_cyclic
from .errors import ConsistencyError, EvaluationError, SatoTateError, UnsupportedError
from .groups import (
    CharacterData,
    ExternalTensor,
    FiniteClasses,
    GroupSpec,
    Product,
    RepSpec,
    SpecialUnitary,
    Torus,
    TorusWeightData,
    Unitary,
    character_data,
    describe_group,
    describe_rep,
    finite_rep_classes,
    torus_restriction,
    validate,
)
from .lattice import WeightPoly, coefficient_of_product, dualize, multiply, power

MAX_WEYL_RANK = 6


# ---------------------------------------------------------------- Weyl group data


def _perm_sign(perm: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def weyl_shifts(n: int, max_rank: int = MAX_WEYL_RANK) -> list[tuple[int, tuple[int, ...]]]:
    """``(sgn sigma, sigma(rho) - rho)`` for all sigma in S_n, rho = (n-1, ..., 0)."""
    if n > max_rank:
        raise UnsupportedError(f"Weyl alternation over S_{n} exceeds the configured rank bound {max_rank}")
    rho = tuple(range(n - 1, -1, -1))
    out = []
    for perm in itertools.permutations(range(n)):
        out.append((_perm_sign(perm), tuple(rho[perm[i]] - rho[i] for i in range(n))))
    return out


# ---------------------------------------------------------------- single-group evaluators


def _check_result(total: int, cell) -> int:
    if total < 0:
        raise ConsistencyError(f"negative invariant count {total}", cell)
    return total


def torus_invariants(w: TorusWeightData, a: int, b: int) -> int:
    """Constant term of ``w^a * dual(w)^b``."""
    if a == 0 and b == 0:
        return 1
    r = w.weights.reach()
    A = power(w.weights, a, bound=b * r)
    B = power(dualize(w.weights), b, bound=a * r)
    return _check_result(coefficient_of_product(A, B, (0,) * w.rank), (a, b))


def _su_levels(A: WeightPoly, B: WeightPoly, sl: slice, n: int) -> range:
    if A.is_zero() or B.is_zero():
        return range(0)
    lo_a, hi_a = A.degrees(sl)
    lo_b, hi_b = B.degrees(sl)
    lo, hi = lo_a + lo_b, hi_a + hi_b
    return range(-((-lo) // n), hi // n + 1)


def weyl_invariants(g: Unitary | SpecialUnitary, w: TorusWeightData, a: int, b: int, max_rank: int = MAX_WEYL_RANK) -> int:
    """Trivial-isotypic multiplicity in ``V^a (x) V*^b`` for U(n) or SU(n).

    N_lambda = sum_sigma sgn(sigma) m(sigma(lambda + rho) - rho), with m the
    weight multiplicity of the product character.  U(n) returns N_0; SU(n)
    sums N_(k,...,k) over the finitely many k with nk in the degree range.
    """
    if not isinstance(g, (Unitary, SpecialUnitary)):
        raise UnsupportedError(f"weyl_invariants needs U(n) or SU(n), got {describe_group(g)}")
    n = g.n
    if w.rank != n:
        raise UnsupportedError(f"torus data of rank {w.rank} for a group of rank {n}")
    if a == 0 and b == 0:
        return 1
    shifts = weyl_shifts(n, max_rank)
    p = w.weights
    dual = dualize(p)
    if isinstance(g, Unitary):
        T = n - 1
        A = power(p, a, bound=T + b * dual.reach())
        B = power(dual, b, bound=T + a * p.reach())
        levels = range(0, 1)
    else:
        A, B = power(p, a), power(dual, b)
        levels = _su_levels(A, B, slice(None), n)
    total = 0
    for k in levels:
        for sign, t in shifts:
            total += sign * coefficient_of_product(A, B, tuple(x + k for x in t))
    return _check_result(total, (a, b))


def finite_invariants(g: FiniteClasses, a: int, b: int) -> int:
    """(1/|G|) sum_classes size * tr^a * conj(tr)^b, computed in Z[zeta_M].

    Each class contributes the polynomial (sum_j X^e_j)^a (sum_j X^-e_j)^b in
    Z[X]/(X^M - 1).  The weighted sum is reduced modulo Phi_M; a genuine
    character table leaves a rational integer divisible by |G|.
    """
    if a == 0 and b == 0:
        return 1
    M = g.modulus
    total = [0] * M
    for c in g.classes:
        pos = [0] * M
        for e in c.exponents:
            pos[e % M] += 1
        neg = [0] * M
        for e in c.exponents:
            neg[(-e) % M] += 1
        A = _cyclic_power(pos, a, M)
        B = _cyclic_power(neg, b, M)
        for i, x in enumerate(A):
            if x:
                for j, y in enumerate(B):
                    if y:
                        total[(i + j) % M] += c.size * x * y
    return _finish_cyclotomic(total, M, g.order, (a, b))


def _cyclic_power(vec: list[int], k: int, M: int) -> list[int]:
    out = [0] * M
    out[0] = 1
    for _ in range(k):
        nxt = [0] * M
        for i, x in enumerate(out):
            if x:
                for j, y in enumerate(vec):
                    if y:
                        nxt[(i + j) % M] += x * y
        out = nxt
    return out


def _finish_cyclotomic(vec: list[int], M: int, order: int, cell) -> int:
    red = reduce_cyclic(vec, M)
    if any(red[1:]):
        raise ConsistencyError(f"class sum is not rational in Z[zeta_{M}] (corrupt class data?)", cell)
    q, r = divmod(red[0], order)
    if r:
        raise ConsistencyError(f"class sum {red[0]} is not divisible by |G| = {order} (corrupt class data?)", cell)
    return _check_result(q, cell)


# ---------------------------------------------------------------- joint engine


class _PowerCache:
    """Incremental powers ``p^0, p^1, ...`` of one polynomial, safe for concurrent use."""

    def __init__(self, p: WeightPoly, fold):
        self._p = p
        self._fold = fold
        self._powers = [WeightPoly._raw(p.rank, {fold((0,) * p.rank): 1})]
        self._lock = threading.Lock()

    def get(self, k: int) -> WeightPoly:
        with self._lock:
            while len(self._powers) <= k:
                self._powers.append(multiply(self._powers[-1], self._p, fold=self._fold))
            return self._powers[k]


class Engine:
    """Exact evaluator for one (group, representation) pair over its joint layout.

    Powers of the per-class characters are cached incrementally across cells;
    the cache only saves work and never changes a result.
    """

    def __init__(self, g: GroupSpec, v: RepSpec, max_rank: int = MAX_WEYL_RANK):
        self.group, self.rep = g, v
        self.data: CharacterData = character_data(g, v)
        lay = self.data.layout
        self.layout = lay
        self._block_shifts = []
        for blk in lay.blocks:
            if blk.kind == "torus":
                self._block_shifts.append([(1, (0,) * blk.size)])
            else:
                self._block_shifts.append(weyl_shifts(blk.size, max_rank))
        fold = lay.fold
        self._pos = [_PowerCache(p, fold) for p in self.data.polys]
        self._neg = [_PowerCache(dualize(p, fold=fold), fold) for p in self.data.polys]
        self._index_lock = threading.Lock()
        self._index: dict[tuple[int, int], dict] = {}

    @property
    def dim(self) -> int:
        return self.data.dim

    def _indexed(self, cls: int, b: int) -> dict:
        # B grouped by its continuous part: cont -> [(phase, coeff)]
        key = (cls, b)
        with self._index_lock:
            got = self._index.get(key)
        if got is not None:
            return got
        idx: dict = {}
        for w, c in self._neg[cls].get(b).terms.items():
            idx.setdefault(w[:-1], []).append((w[-1], c))
        with self._index_lock:
            self._index[key] = idx
        return idx

    def _targets(self, A: WeightPoly, B: WeightPoly):
        per_block = []
        for blk, shifts in zip(self.layout.blocks, self._block_shifts):
            if blk.kind != "special_unitary":
                per_block.append(shifts)
                continue
            sl = slice(blk.offset, blk.offset + blk.size)
            per_block.append([(s, tuple(x + k for x in t)) for k in _su_levels(A, B, sl, blk.size) for s, t in shifts])
        for combo in itertools.product(*per_block):
            sign = 1
            t: tuple[int, ...] = ()
            for s, part in combo:
                sign *= s
                t += part
            yield sign, t

    def value(self, a: int, b: int) -> int:
        if a < 0 or b < 0:
            raise EvaluationError("moment indices must be nonnegative", (a, b))
        if a == 0 and b == 0:
            return 1
        lay = self.layout
        M = lay.modulus
        vec = [0] * M
        for cls, size in enumerate(lay.sizes):
            A = self._pos[cls].get(a)
            B = self._neg[cls].get(b)
            idx = self._indexed(cls, b)
            terms = list(A.terms.items())
            for sign, t in self._targets(A, B):
                coef = sign * size
                for u, cu in terms:
                    hits = idx.get(tuple(x - y for x, y in zip(t, u[:-1])))
                    if hits:
                        ph = u[-1]
                        for pv, cv in hits:
                            vec[(ph + pv) % M] += coef * cu * cv
        return _finish_cyclotomic(vec, M, lay.order, (a, b))


# ---------------------------------------------------------------- public entry points


def moment(g: GroupSpec, v: RepSpec, a: int, b: int, max_rank: int = MAX_WEYL_RANK) -> int:
    """F_{G,V}(a, b) for any supported group and representation."""
    if a < 0 or b < 0:
        raise EvaluationError("moment indices must be nonnegative", (a, b))
    validate(g, v)
    if a == 0 and b == 0:
        return 1
    try:
        if isinstance(g, Product) and isinstance(v, ExternalTensor):
            out = 1
            for f, leg in zip(g.factors, v.legs):
                out *= moment(f, leg, a, b, max_rank)
                if not out:
                    break
            return out
        if isinstance(g, Torus):
            return torus_invariants(torus_restriction(g, v), a, b)
        if isinstance(g, (Unitary, SpecialUnitary)):
            return weyl_invariants(g, torus_restriction(g, v), a, b, max_rank)
        if isinstance(g, FiniteClasses):
            return finite_invariants(finite_rep_classes(g, v), a, b)
        return Engine(g, v, max_rank).value(a, b)
    except EvaluationError as exc:
        if exc.cell is None:
            raise type(exc)(str(exc), (a, b)) from exc
        raise


@dataclass
class MomentTable:
    """F(a, b) on the box [0, amax] x [0, bmax]."""

    entries: dict[tuple[int, int], int]
    group: str
    rep: str
    dim: int
    amax: int
    bmax: int
    meta: dict = field(default_factory=dict)

    def __getitem__(self, cell: tuple[int, int]) -> int:
        return self.entries[cell]

    def __contains__(self, cell) -> bool:
        return cell in self.entries

    def get(self, a: int, b: int, default=None):
        return self.entries.get((a, b), default)

    def diagonal(self) -> list[int]:
        return [self.entries[(a, a)] for a in range(min(self.amax, self.bmax) + 1)]

    def rows(self) -> list[tuple[int, int, int]]:
        return [(a, b, self.entries[(a, b)]) for a in range(self.amax + 1) for b in range(self.bmax + 1)]

    def violations(self) -> list[str]:
        """Invariant failures (empty for a genuine Sato-Tate function)."""
        out = []
        if self.entries.get((0, 0), 1) != 1:
            out.append("F(0,0) != 1")
        for (a, b), f in self.entries.items():
            if f < 0:
                out.append(f"F({a},{b}) < 0")
            if (b, a) in self.entries and self.entries[(b, a)] != f:
                out.append(f"F({a},{b}) != F({b},{a})")
            if f > self.dim ** (a + b):
                out.append(f"F({a},{b}) > dim^{a + b}")
        return out


def moment_table(
    g: GroupSpec,
    v: RepSpec,
    amax: int,
    bmax: int,
    workers: Optional[int] = None,
    max_rank: int = MAX_WEYL_RANK,
    engine: Optional[Engine] = None,
) -> MomentTable:
    """All F(a, b) with a <= amax, b <= bmax; mirror cells are computed once."""
    if amax < 0 or bmax < 0:
        raise EvaluationError("table bounds must be nonnegative")
    eng = engine or Engine(g, v, max_rank)
    cells = [(a, b) for a in range(amax + 1) for b in range(bmax + 1) if a >= b or b > amax]
    entries: dict[tuple[int, int], int] = {}

    def work(cell):
        try:
            return cell, eng.value(*cell)
        except SatoTateError as exc:
            cell_err = getattr(exc, "cell", None)
            if cell_err is None:
                raise EvaluationError(str(exc), cell) from exc
            raise

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, cells))
    else:
        results = [work(c) for c in cells]
    for (a, b), f in results:
        entries[(a, b)] = f
        if b <= amax and a <= bmax:
            entries[(b, a)] = f
    return MomentTable(entries, describe_group(g), describe_rep(v), eng.dim, amax, bmax)


def moments_along(g: GroupSpec, v: RepSpec, cells: Iterable[tuple[int, int]], max_rank: int = MAX_WEYL_RANK) -> dict:
    """Evaluate an arbitrary set of cells with one shared engine."""
    eng = Engine(g, v, max_rank)
    return {c: eng.value(*c) for c in cells}


class ProductEngine:
    """F for ``Product`` groups acting by an external tensor, via F = prod of factor values."""

    def __init__(self, engines: list):
        self.engines = engines

    @property
    def dim(self) -> int:
        return prod(e.dim for e in self.engines)

    def value(self, a: int, b: int) -> int:
        out = 1
        for e in self.engines:
            out *= e.value(a, b)
            if not out:
                break
        return out


class Memo:
    """Thread-safe memo of cell values on top of any evaluator with ``value`` and ``dim``."""

    def __init__(self, inner):
        self.inner = inner
        self._lock = threading.Lock()
        self._cache: dict[tuple[int, int], int] = {}

    @property
    def dim(self) -> int:
        return self.inner.dim

    def value(self, a: int, b: int) -> int:
        key = (a, b) if a >= b else (b, a)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        got = self.inner.value(*key)
        with self._lock:
            self._cache[key] = got
        return got


def engine_for(g: GroupSpec, v: RepSpec, max_rank: int = MAX_WEYL_RANK) -> Memo:
    """The cheapest exact evaluator for (g, v), memoized.

    Cells are stored under (max, min); this relies on F(a, b) = F(b, a), which
    holds because the two tensor spaces are dual to each other.
    """
    validate(g, v)
    return Memo(_raw_engine(g, v, max_rank))


def _raw_engine(g, v, max_rank):
    if isinstance(g, Product) and isinstance(v, ExternalTensor):
        return ProductEngine([_raw_engine(f, leg, max_rank) for f, leg in zip(g.factors, v.legs)])
    return Engine(g, v, max_rank)
