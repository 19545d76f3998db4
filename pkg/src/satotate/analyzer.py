"""Rigidity experiments built on the exact moment engine.

* separation indices: the first norm at which two Sato-Tate functions differ;
* torsion approximants: replace each torus by its n-torsion and compare;
* dimension inference from the diagonal F(a, a);
* the crude lower bound F_{U(n)}(a, a) > (n - 1)^(2a) and where it kicks in;
* irreducibility via F(1, 1) = 1;
* the finite-limit experiment contrasting U(1) with SU(2).

Agreement up to a bound is always reported as inconclusive, never as
equality of measures.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import ConsistencyError, SpecError, UnsupportedError
from .groups import (
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteClasses,
    FiniteGiven,
    GroupSpec,
    Product,
    RepSpec,
    SpecialUnitary,
    Std,
    Symmetric,
    Tensor,
    Torus,
    TorusWeights,
    Unitary,
    character,
    cyclic,
    describe_group,
    describe_rep,
    validate,
    weights_list,
)
from .lattice import WeightPoly
from .moments import MomentTable, engine_for, moment

MAX_SEPARATION_BOUND = 30
MAX_CRUDE_WINDOW = 20
NORMS = ("total", "box")

Pair = tuple  # (GroupSpec, RepSpec)
PairLike = Union[str, Pair]


def _resolve(gv: PairLike) -> tuple[str, GroupSpec, RepSpec]:
    if isinstance(gv, str):
        from .catalog import load

        entry = load(gv)
        return entry.name, entry.group, entry.rep
    g, v = gv
    return f"{describe_group(g)} {describe_rep(v)}", g, v


# ---------------------------------------------------------------- cell scans


def cells_at(level: int, norm: str = "total") -> list[tuple[int, int]]:
    """Cells of one norm level in scan order, listing only a >= b.

    F(a, b) = F(b, a), so the mirrored half carries no extra information.
    Order is a ascending, then b ascending.
    """
    if norm == "total":
        return [(a, level - a) for a in range((level + 1) // 2, level + 1)]
    if norm == "box":
        return [(level, b) for b in range(level + 1)]
    raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")


def cell_norm(a: int, b: int, norm: str = "total") -> int:
    return a + b if norm == "total" else max(a, b)


@dataclass
class SeparationReport:
    left: str
    right: str
    norm: str
    bound: int
    index: Optional[int]
    witness: Optional[tuple[int, int, int, int]]
    cells_checked: int = 0

    @property
    def separated(self) -> bool:
        return self.index is not None

    def summary(self) -> str:
        if self.index is None:
            return f"agree <= {self.bound} ({self.norm} norm); inconclusive"
        a, b, fl, fr = self.witness
        return f"index {self.index} at ({a},{b}): {fl} vs {fr}"


def _first_difference(ev1, ev2, norm, bound, workers):
    checked = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers and workers > 1 else None
    try:
        for level in range(bound + 1):
            cells = cells_at(level, norm)
            if pool is None:
                vals = []
                for c in cells:
                    pair = (ev1.value(*c), ev2.value(*c))
                    vals.append(pair)
                    checked += 1
                    if pair[0] != pair[1]:
                        break
            else:
                vals = list(pool.map(lambda c: (ev1.value(*c), ev2.value(*c)), cells))
                checked += len(vals)
            # take the first disagreement in scan order, whatever finished first
            for c, (x, y) in zip(cells, vals):
                if x != y:
                    return level, (c[0], c[1], x, y), checked
    finally:
        if pool is not None:
            pool.shutdown()
    return None, None, checked


def separation_index(
    gv1: PairLike,
    gv2: PairLike,
    norm: str = "total",
    bound: int = MAX_SEPARATION_BOUND,
    workers: Optional[int] = None,
    engines: Optional[dict] = None,
) -> SeparationReport:
    """First norm level at which F_{gv1} and F_{gv2} differ.

    ``gv1`` and ``gv2`` are (group, rep) pairs or catalog names.  ``engines``
    may map labels to prebuilt evaluators so a sweep shares caches.
    """
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")
    if not 0 <= bound <= MAX_SEPARATION_BOUND:
        raise ValueError(f"bound must lie in [0, {MAX_SEPARATION_BOUND}]")
    engines = {} if engines is None else engines
    evs = []
    labels = []
    for gv in (gv1, gv2):
        label, g, v = _resolve(gv)
        if label not in engines:
            engines[label] = engine_for(g, v)
        evs.append(engines[label])
        labels.append(label)
    index, witness, checked = _first_difference(evs[0], evs[1], norm, bound, workers)
    return SeparationReport(labels[0], labels[1], norm, bound, index, witness, checked)


# ---------------------------------------------------------------- torsion approximants


@dataclass
class TorsionApproximant:
    base: str
    n: int
    group: GroupSpec
    rep: RepSpec

    @property
    def pair(self):
        return self.group, self.rep


def _map_rep(v: RepSpec, leaf):
    """Rebuild a representation tree, sending every atom or ExternalTensor node through ``leaf``."""
    if isinstance(v, Dual):
        return Dual(_map_rep(v.rep, leaf))
    if isinstance(v, DirectSum):
        return DirectSum(tuple(_map_rep(p, leaf) for p in v.parts))
    if isinstance(v, Tensor):
        return Tensor(tuple(_map_rep(p, leaf) for p in v.parts))
    if isinstance(v, Exterior):
        return Exterior(v.k, _map_rep(v.rep, leaf))
    if isinstance(v, Symmetric):
        return Symmetric(v.k, _map_rep(v.rep, leaf))
    return leaf(v)


def _torus_leaf(r: int):
    def leaf(v):
        if not isinstance(v, TorusWeights):
            raise SpecError(f"{describe_rep(v)} is not a torus representation")
        parts = []
        for w in weights_list(WeightPoly.from_weights(v.weights, rank=r)):
            chars = [character(k) for k in w]
            parts.append(chars[0] if r == 1 else ExternalTensor(tuple(chars)))
        return parts[0] if len(parts) == 1 else DirectSum(tuple(parts))

    return leaf


def _approximate(g: GroupSpec, n: int):
    """(new group, atom mapper, whether a torus was replaced)."""
    if isinstance(g, Torus):
        grp = cyclic(n) if g.rank == 1 else Product(tuple(cyclic(n) for _ in range(g.rank)))
        return grp, _torus_leaf(g.rank), True
    if isinstance(g, Unitary):
        if g.n == 1:
            # U(1) acting by Std is the weight-1 torus
            return cyclic(n), lambda v: FiniteGiven() if isinstance(v, Std) else _bad(v), True
        # split cover SU(n) x U(1) -> U(n); invariant dimensions pull back unchanged
        grp = Product((SpecialUnitary(g.n), cyclic(n)))
        return grp, lambda v: ExternalTensor((Std(), FiniteGiven())) if isinstance(v, Std) else _bad(v), True
    if isinstance(g, (SpecialUnitary, FiniteClasses)):
        return g, lambda v: v, False
    if isinstance(g, Product):
        subs = [_approximate(f, n) for f in g.factors]

        def leaf(v):
            if not isinstance(v, ExternalTensor):
                raise SpecError(f"{describe_rep(v)} cannot act on a product group")
            return ExternalTensor(tuple(_map_rep(leg, s[1]) for leg, s in zip(v.legs, subs)))

        return Product(tuple(s[0] for s in subs)), leaf, any(s[2] for s in subs)
    raise SpecError(f"unsupported group {g!r}")


def _bad(v):
    raise SpecError(f"{describe_rep(v)} is not built from Std")


def torsion_approximant(g: GroupSpec, v: RepSpec, n: int) -> TorsionApproximant:
    """Replace every torus factor of ``g`` by its n-torsion subgroup.

    Torus(r) becomes r copies of cyclic(n).  Unitary(m) is first replaced by
    its split cover SU(m) x U(1) acting by Std tensor weight 1, and the U(1)
    is then replaced.  Other factors and the shape of the representation are
    kept.
    """
    if not isinstance(n, int) or n < 1:
        raise SpecError(f"torsion order must be a positive integer, got {n!r}")
    validate(g, v)
    grp, leaf, changed = _approximate(g, n)
    if not changed:
        raise UnsupportedError("already semisimple-by-finite: no torus factor to approximate")
    rep = _map_rep(v, leaf)
    validate(grp, rep)
    return TorsionApproximant(describe_group(g), n, grp, rep)


@dataclass
class TorsionReport:
    n: int
    degree: int
    norm: str
    cells: list[tuple[int, int, int, int]]  # (a, b, F_G, F_{G_n})
    first_disagreement: Optional[int]
    witness: Optional[tuple[int, int, int, int]]

    @property
    def full_agreement(self) -> bool:
        return self.first_disagreement is None

    def summary(self) -> str:
        if self.full_agreement:
            return f"agreement: full up to {self.norm} degree {self.degree}"
        a, b, x, y = self.witness
        return f"agreement: first disagreement at norm {self.first_disagreement}, cell ({a},{b}): {x} vs {y}"


def verify_torsion_agreement(g: GroupSpec, v: RepSpec, n: int, degree: int, norm: str = "total") -> TorsionReport:
    """Compare F_{G,V} with F_{G_n,V} on every cell of norm <= degree."""
    approx = torsion_approximant(g, v, n)
    e1, e2 = engine_for(g, v), engine_for(*approx.pair)
    rows = []
    for a in range(degree + 1):
        for b in range(degree + 1):
            if cell_norm(a, b, norm) <= degree:
                rows.append((a, b, e1.value(a, b), e2.value(a, b)))
    level, witness, _ = _first_difference(e1, e2, norm, degree, None)
    return TorsionReport(n, degree, norm, rows, level, witness)


# ---------------------------------------------------------------- dimension


def partitions(n: int, max_part: Optional[int] = None):
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def hook_length_count(shape: tuple[int, ...]) -> int:
    """Number of standard Young tableaux of the given shape."""
    n = sum(shape)
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(n) // hooks


@lru_cache(maxsize=None)
def unitary_diagonal(d: int, a: int) -> int:
    """F_{U(d), Std}(a, a) = sum over partitions of a with at most d rows of (f^lambda)^2."""
    return sum(hook_length_count(p) ** 2 for p in partitions(a) if len(p) <= d)


@dataclass
class DimensionEstimate:
    low: int
    high: Optional[int]  # None: no upper bound from the available data
    lower_witness: Optional[int]  # a with F(a,a) > (low - 1)^(2a)
    upper_witness: Optional[int]  # a with F_{U(high + 1)}(a,a) > F(a,a)
    amax: int

    @property
    def pinned(self) -> bool:
        return self.high == self.low

    @property
    def value(self) -> Optional[int]:
        return self.low if self.pinned else None

    def summary(self) -> str:
        if self.pinned:
            return f"dim = {self.low} (lower bound binds at a={self.lower_witness}, upper at a={self.upper_witness})"
        hi = "inf" if self.high is None else str(self.high)
        return f"dim in [{self.low}, {hi}] (not pinned by a <= {self.amax})"


def _diagonal_bounds(table, amax: Optional[int], k: float):
    """Per-a (lo, hi) bounds on F(a, a) for a = 1..amax."""
    if isinstance(table, MomentTable):
        top = min(table.amax, table.bmax) if amax is None else amax
        return {a: (table[(a, a)], table[(a, a)]) for a in range(1, top + 1)}
    mean, err = table.mean, table.stderr
    avail = max(a for a, b in mean if a == b)
    top = avail if amax is None else amax
    out = {}
    for a in range(1, top + 1):
        m, s = mean[(a, a)].real, err[(a, a)]
        out[a] = (max(0.0, m - k * s), m + k * s)
    return out


def infer_dimension(table, amax: Optional[int] = None, dim_bound: int = 64, k: float = 5.0) -> DimensionEstimate:
    """Bracket dim V from the diagonal of a moment table.

    For G inside U(V) with dim V = d the diagonal is squeezed:
    F_{U(d)}(a, a) <= F(a, a) <= d^(2a).  The least d allowed by the right
    inequality is a lower bound, the largest d allowed by the left one an
    upper bound.  An EmpiricalMoments table is read as intervals of
    ``k`` standard errors.
    """
    bounds = _diagonal_bounds(table, amax, k)
    top = max(bounds, default=0)
    low = None
    for d in range(1, dim_bound + 1):
        if all(lo <= d ** (2 * a) for a, (lo, _) in bounds.items()):
            low = d
            break
    if low is None:
        raise ConsistencyError(f"diagonal exceeds d^(2a) for every d <= {dim_bound}")
    lower_witness = next((a for a, (lo, _) in sorted(bounds.items()) if lo > (low - 1) ** (2 * a)), None)

    high = None
    upper_witness = None
    for d in range(1, dim_bound + 1):
        bad = next((a for a, (_, hi) in sorted(bounds.items()) if unitary_diagonal(d, a) > hi), None)
        if bad is not None:
            high, upper_witness = d - 1, bad
            break
    if high is not None and high < low:
        raise ConsistencyError(f"no dimension fits the diagonal: lower bound {low}, upper bound {high}")
    return DimensionEstimate(low, high, lower_witness, upper_witness, top)


# ---------------------------------------------------------------- crude bound


@dataclass
class CrudeBoundReport:
    n: int
    amax: int
    threshold: Optional[int]
    values: list[int]
    ratios: list[Fraction]

    @property
    def attained(self) -> bool:
        return self.threshold is not None

    def summary(self) -> str:
        if self.threshold is None:
            return f"not yet attained <= {self.amax}"
        return f"F_U({self.n})(a,a) > ({self.n}-1)^(2a) for {self.threshold} < a <= {self.amax}"


def crude_bound_threshold(n: int, amax: int = MAX_CRUDE_WINDOW) -> CrudeBoundReport:
    """Least N with F_{U(n)}(a, a) > (n - 1)^(2a) for every N < a <= amax."""
    if n < 2:
        raise ValueError("crude bound needs n >= 2")
    if not 0 <= amax <= MAX_CRUDE_WINDOW:
        raise ValueError(f"amax must lie in [0, {MAX_CRUDE_WINDOW}]")
    ev = engine_for(Unitary(n), Std())
    values = [ev.value(a, a) for a in range(amax + 1)]
    ratios = [Fraction(f, (n - 1) ** (2 * a)) for a, f in enumerate(values)]
    fails = [a for a in range(amax + 1) if values[a] <= (n - 1) ** (2 * a)]
    last = fails[-1] if fails else -1
    threshold = None if last == amax else max(last, 0)
    return CrudeBoundReport(n, amax, threshold, values, ratios)


def increasing_from(seq) -> Optional[int]:
    """Least index i such that seq is strictly increasing from i onward (None if only the last term qualifies)."""
    i = len(seq) - 1
    while i > 0 and seq[i - 1] < seq[i]:
        i -= 1
    return i if i < len(seq) - 1 else None


# ---------------------------------------------------------------- irreducibility


def check_irreducible(g: GroupSpec, v: RepSpec) -> bool:
    """V is irreducible iff dim End_G(V) = F(1, 1) = 1."""
    return moment(g, v, 1, 1) == 1


# ---------------------------------------------------------------- finite-limit experiment


@dataclass
class FiniteLimitReport:
    target: str
    norm: str
    rows: list[SeparationReport] = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def max_index(self) -> Optional[int]:
        idx = [r.index for r in self.rows if r.index is not None]
        return max(idx) if idx else None

    @property
    def argmax(self) -> list[str]:
        m = self.max_index
        return [r.right for r in self.rows if m is not None and r.index == m]

    @property
    def unseparated(self) -> list[str]:
        return [r.right for r in self.rows if r.index is None]


def finite_limit_experiment(
    target: str = "su2", names: Optional[list[str]] = None, bound: int = MAX_SEPARATION_BOUND, norm: str = "total"
) -> FiniteLimitReport:
    """Separation of a continuous target from a family of finite groups.

    ``target="torus"``: U(1) weight 1 against cyclic(n).  The index should be
    exactly n, so these indices grow without bound.

    ``target="su2"``: SU(2) Std against the shipped finite subgroups.  The
    indices stay bounded.
    """
    from .catalog import su2_finite_names

    if target == "torus":
        left = "u1-wt1"
        names = names or [f"cyclic({n})" for n in range(1, min(bound, 12) + 1)]
    elif target == "su2":
        left = "su2-std"
        names = names or su2_finite_names()
    else:
        raise ValueError("target must be 'torus' or 'su2'")
    engines: dict = {}
    report = FiniteLimitReport(left, norm)
    for name in names:
        report.rows.append(separation_index(left, name, norm=norm, bound=bound, engines=engines))
    if target == "torus":
        from .catalog import normalize_name

        report.checks["index_equals_order"] = all(
            r.index == int(normalize_name(r.right)[7:-1]) for r in report.rows
        )
    else:
        report.checks["all_separated"] = not report.unseparated
    return report


def coincidence_candidates(names: list[str], bound: int = 12, norm: str = "total") -> list[SeparationReport]:
    """Pairs of catalog entries whose moments agree up to ``bound``.

    Agreement is inconclusive evidence only; it never proves the two measures equal.
    """
    engines: dict = {}
    out = []
    for i, x in enumerate(names):
        for y in names[i + 1 :]:
            rep = separation_index(x, y, norm=norm, bound=bound, engines=engines)
            if not rep.separated:
                out.append(rep)
    return out
