"""Compact groups, their representations, and the weight data the evaluators consume.

Supported groups are tori, U(n), SU(n), finite groups given by conjugacy-class
eigenphase data, and direct products of these.  Representations are
expression trees over three atoms (``Std``, ``TorusWeights``, ``FiniteGiven``).

Faithfulness of a representation is never checked.  Every computation here is
valid for non-faithful representations as well: it then describes the image
group acting on V.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from math import comb, gcd, prod
from typing import Union

from .errors import SpecError
from .lattice import (
    WeightPoly,
    add,
    complete,
    dualize,
    elementary,
    multiply,
)

MAX_PRODUCT_DEPTH = 4


def _tuple(x):
    return tuple(x) if not isinstance(x, tuple) else x


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class Torus:
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise SpecError(f"torus rank must be a positive integer, got {self.rank!r}")


@dataclass(frozen=True)
class Unitary:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise SpecError(f"U(n) needs a positive integer n, got {self.n!r}")


@dataclass(frozen=True)
class SpecialUnitary:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise SpecError(f"SU(n) needs an integer n >= 2, got {self.n!r}")


@dataclass(frozen=True)
class ClassDatum:
    """One conjugacy class: its size and the eigenphase exponents of a representative.

    The eigenvalues on V are ``exp(2 pi i e / M)`` for ``e`` in ``exponents``.
    """

    size: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if not isinstance(self.size, int) or self.size < 1:
            raise SpecError(f"class size must be a positive integer, got {self.size!r}")

    def trace(self, modulus: int) -> complex:
        return sum(cmath.exp(2j * cmath.pi * e / modulus) for e in self.exponents)


@dataclass(frozen=True)
class FiniteClasses:
    modulus: int
    classes: tuple[ClassDatum, ...]
    order: int
    name: str = field(default="", compare=False)
    # Derived (possibly non-faithful) representations may send several
    # classes to the identity; input data must have exactly one such class.
    derived: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", _tuple(self.classes))
        M = self.modulus
        if not isinstance(M, int) or M < 1:
            raise SpecError(f"modulus must be a positive integer, got {M!r}")
        if not isinstance(self.order, int) or self.order < 1:
            raise SpecError(f"order must be a positive integer, got {self.order!r}")
        if not self.classes:
            raise SpecError("a finite group needs at least one class")
        total = sum(c.size for c in self.classes)
        if total != self.order:
            raise SpecError(f"class sizes sum to {total}, expected order {self.order}")
        d = len(self.classes[0].exponents)
        for i, c in enumerate(self.classes):
            if len(c.exponents) != d:
                raise SpecError(f"class {i} has {len(c.exponents)} exponents, expected {d}")
            if any(not 0 <= e < M for e in c.exponents):
                raise SpecError(f"class {i} has an exponent outside [0, {M})")
            if abs(c.trace(M)) > d + 1e-9:
                raise SpecError(f"class {i} has |trace| > {d}")
        ids = [c for c in self.classes if c.size == 1 and all(e == 0 for e in c.exponents)]
        if len(ids) != 1 and not (self.derived and ids):
            raise SpecError(f"expected exactly one identity class, found {len(ids)}")

    @property
    def dim(self) -> int:
        return len(self.classes[0].exponents)


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", _tuple(self.factors))
        if len(self.factors) < 2:
            raise SpecError("a product needs at least two factors")
        if _depth(self) > MAX_PRODUCT_DEPTH:
            raise SpecError(f"product nesting deeper than {MAX_PRODUCT_DEPTH}")


GroupSpec = Union[Torus, Unitary, SpecialUnitary, FiniteClasses, Product]


def _depth(g) -> int:
    if isinstance(g, Product):
        return 1 + max(_depth(f) for f in g.factors)
    return 0


# ---------------------------------------------------------------- representations


@dataclass(frozen=True)
class Std:
    """Natural representation of U(n) or SU(n)."""


@dataclass(frozen=True)
class TorusWeights:
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(int(x) for x in w) for w in self.weights))


@dataclass(frozen=True)
class FiniteGiven:
    """The representation whose eigenphases are stored in the FiniteClasses data."""


@dataclass(frozen=True)
class Dual:
    rep: "RepSpec"


@dataclass(frozen=True)
class DirectSum:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", _tuple(self.parts))
        if not self.parts:
            raise SpecError("direct sum needs at least one summand")


@dataclass(frozen=True)
class Tensor:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", _tuple(self.parts))
        if not self.parts:
            raise SpecError("tensor product needs at least one factor")


@dataclass(frozen=True)
class Exterior:
    k: int
    rep: "RepSpec"


@dataclass(frozen=True)
class Symmetric:
    k: int
    rep: "RepSpec"


@dataclass(frozen=True)
class ExternalTensor:
    """One leg per factor of a Product group."""

    legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "legs", _tuple(self.legs))


RepSpec = Union[Std, TorusWeights, FiniteGiven, Dual, DirectSum, Tensor, Exterior, Symmetric, ExternalTensor]


def character(k: int) -> RepSpec:
    """The 1-dimensional representation ``FiniteGiven^(tensor k)`` (k may be negative or zero).

    Only meaningful when FiniteGiven is 1-dimensional, as for ``cyclic(n)``.
    """
    if k >= 0:
        return Symmetric(k, FiniteGiven())
    return Dual(Symmetric(-k, FiniteGiven()))


# ---------------------------------------------------------------- dimensions and validation


def dimension(g: GroupSpec, v: RepSpec, where: str = "rep") -> int:
    """Dimension of ``v`` as a representation of ``g``; raises SpecError on incompatibility."""
    if isinstance(v, Std):
        if isinstance(g, (Unitary, SpecialUnitary)):
            return g.n
        raise SpecError(f"Std is not defined for {describe_group(g)}", where)
    if isinstance(v, TorusWeights):
        if not isinstance(g, Torus):
            raise SpecError(f"TorusWeights needs a torus, got {describe_group(g)}", where)
        if not v.weights:
            raise SpecError("TorusWeights needs at least one weight", where)
        for w in v.weights:
            if len(w) != g.rank:
                raise SpecError(f"weight {w} has length {len(w)}, torus rank is {g.rank}", where)
        return len(v.weights)
    if isinstance(v, FiniteGiven):
        if not isinstance(g, FiniteClasses):
            raise SpecError(f"FiniteGiven needs finite class data, got {describe_group(g)}", where)
        return g.dim
    if isinstance(v, Dual):
        return dimension(g, v.rep, where + ".of")
    if isinstance(v, DirectSum):
        return sum(dimension(g, p, f"{where}.parts[{i}]") for i, p in enumerate(v.parts))
    if isinstance(v, Tensor):
        return prod(dimension(g, p, f"{where}.parts[{i}]") for i, p in enumerate(v.parts))
    if isinstance(v, (Exterior, Symmetric)):
        if not isinstance(v.k, int) or v.k < 0:
            raise SpecError(f"power index must be a nonnegative integer, got {v.k!r}", where)
        n = dimension(g, v.rep, where + ".of")
        d = comb(n, v.k) if isinstance(v, Exterior) else comb(n + v.k - 1, v.k)
        if d < 1:
            raise SpecError(f"Exterior({v.k}) of a {n}-dimensional representation is zero", where)
        return d
    if isinstance(v, ExternalTensor):
        if not isinstance(g, Product):
            raise SpecError(f"ExternalTensor needs a product group, got {describe_group(g)}", where)
        if len(v.legs) != len(g.factors):
            raise SpecError(f"{len(v.legs)} legs for {len(g.factors)} factors", where)
        return prod(dimension(f, leg, f"{where}.legs[{i}]") for i, (f, leg) in enumerate(zip(g.factors, v.legs)))
    raise SpecError(f"unknown representation node {v!r}", where)


def validate(g: GroupSpec, v: RepSpec) -> int:
    """Check that ``v`` is a representation of ``g`` and return its dimension."""
    return dimension(g, v)


# ---------------------------------------------------------------- labels


def describe_group(g: GroupSpec) -> str:
    if isinstance(g, Torus):
        return "U(1)" if g.rank == 1 else f"T^{g.rank}"
    if isinstance(g, Unitary):
        return f"U({g.n})"
    if isinstance(g, SpecialUnitary):
        return f"SU({g.n})"
    if isinstance(g, FiniteClasses):
        return g.name or f"finite(order={g.order})"
    if isinstance(g, Product):
        return " x ".join(describe_group(f) for f in g.factors)
    return repr(g)


def describe_rep(v: RepSpec) -> str:
    if isinstance(v, Std):
        return "Std"
    if isinstance(v, TorusWeights):
        return "wt" + ",".join("(" + ",".join(map(str, w)) + ")" if len(w) > 1 else str(w[0]) for w in v.weights)
    if isinstance(v, FiniteGiven):
        return "given"
    if isinstance(v, Dual):
        return f"{describe_rep(v.rep)}*"
    if isinstance(v, DirectSum):
        return "(" + " + ".join(map(describe_rep, v.parts)) + ")"
    if isinstance(v, Tensor):
        return "(" + " (x) ".join(map(describe_rep, v.parts)) + ")"
    if isinstance(v, Exterior):
        return f"Ext^{v.k}({describe_rep(v.rep)})"
    if isinstance(v, Symmetric):
        return f"Sym^{v.k}({describe_rep(v.rep)})"
    if isinstance(v, ExternalTensor):
        return " [x] ".join(map(describe_rep, v.legs))
    return repr(v)


# ---------------------------------------------------------------- torus data


@dataclass(frozen=True)
class TorusWeightData:
    """Restriction of a representation to a maximal torus."""

    rank: int
    weights: WeightPoly

    def __post_init__(self):
        if self.weights.rank != self.rank:
            raise SpecError(f"weight rank {self.weights.rank} != torus rank {self.rank}")
        if any(c < 0 for c in self.weights.terms.values()):
            raise SpecError("torus weight multiplicities must be nonnegative")

    @property
    def dim(self) -> int:
        return self.weights.augmentation()


def reduce_null_direction(p: WeightPoly) -> WeightPoly:
    """Map U(n) weights to SU(n) weights, ``w -> (w_i - w_n)_{i<n}``, killing the all-ones direction."""
    return WeightPoly(((tuple(x - w[-1] for x in w[:-1]), c) for w, c in p.terms.items()), rank=p.rank - 1)


def torus_restriction(g: GroupSpec, v: RepSpec) -> TorusWeightData:
    """Weights of ``v`` on the maximal torus of a torus / U(n) / SU(n) group or a product of them.

    U(n) and SU(n) both use Z^n with Std weights e_1..e_n; for SU(n) the
    all-ones direction is null (see :func:`reduce_null_direction`).
    """
    data = character_data(g, v)
    if data.layout.modulus != 1 or len(data.polys) != 1:
        raise SpecError(f"{describe_group(g)} has finite factors; use finite_rep_classes")
    r = data.layout.cont_rank
    poly = data.polys[0]
    return TorusWeightData(r, WeightPoly(((w[:r], c) for w, c in poly.terms.items()), rank=r))


# ---------------------------------------------------------------- finite class data


def finite_rep_classes(g: FiniteClasses, v: RepSpec) -> FiniteClasses:
    """Eigenphase data of a derived representation of a finite group.

    Dual negates exponents, Tensor takes all pairwise sums (row-major),
    Exterior(k)/Symmetric(k) sum strictly/weakly increasing k-subsets.
    """
    if not isinstance(g, FiniteClasses):
        raise SpecError(f"finite_rep_classes needs FiniteClasses, got {describe_group(g)}")
    dimension(g, v)
    M = g.modulus

    def walk(node, exps):
        if isinstance(node, FiniteGiven):
            return list(exps)
        if isinstance(node, Dual):
            return [(-e) % M for e in walk(node.rep, exps)]
        if isinstance(node, DirectSum):
            return [e for p in node.parts for e in walk(p, exps)]
        if isinstance(node, Tensor):
            out = [0]
            for p in node.parts:
                sub = walk(p, exps)
                out = [(x + y) % M for x in out for y in sub]
            return out
        if isinstance(node, Exterior):
            return [sum(c) % M for c in itertools.combinations(walk(node.rep, exps), node.k)]
        if isinstance(node, Symmetric):
            return [sum(c) % M for c in itertools.combinations_with_replacement(walk(node.rep, exps), node.k)]
        raise SpecError(f"{type(node).__name__} is not available on a finite group")

    classes = tuple(ClassDatum(c.size, tuple(walk(v, c.exponents))) for c in g.classes)
    return FiniteClasses(M, classes, g.order, name=g.name, derived=True)


# ---------------------------------------------------------------- joint layout


@dataclass(frozen=True)
class Block:
    """A connected factor occupying coordinates ``offset .. offset + size`` of the joint lattice."""

    kind: str  # "torus" | "unitary" | "special_unitary"
    size: int
    offset: int


@dataclass(frozen=True)
class Layout:
    """Flattened structure of a group: connected blocks plus finite class tuples.

    Joint weights live in ``Z^cont_rank x Z/modulus``; the last coordinate is
    the root-of-unity exponent contributed by the finite factors.
    """

    blocks: tuple[Block, ...]
    cont_rank: int
    modulus: int
    sizes: tuple[int, ...]
    order: int

    def fold(self, w):
        return w[:-1] + (w[-1] % self.modulus,)


@dataclass(frozen=True)
class CharacterData:
    """Per-class joint weight polynomials of a representation, aligned with ``layout.sizes``."""

    layout: Layout
    polys: tuple[WeightPoly, ...]

    @property
    def dim(self) -> int:
        return self.polys[0].augmentation()


def layout_of(g: GroupSpec) -> Layout:
    if isinstance(g, Torus):
        return Layout((Block("torus", g.rank, 0),), g.rank, 1, (1,), 1)
    if isinstance(g, Unitary):
        return Layout((Block("unitary", g.n, 0),), g.n, 1, (1,), 1)
    if isinstance(g, SpecialUnitary):
        return Layout((Block("special_unitary", g.n, 0),), g.n, 1, (1,), 1)
    if isinstance(g, FiniteClasses):
        return Layout((), 0, g.modulus, tuple(c.size for c in g.classes), g.order)
    if isinstance(g, Product):
        subs = [layout_of(f) for f in g.factors]
        blocks, off = [], 0
        for s in subs:
            blocks.extend(Block(b.kind, b.size, b.offset + off) for b in s.blocks)
            off += s.cont_rank
        M = 1
        for s in subs:
            M = M * s.modulus // gcd(M, s.modulus)
        sizes = tuple(prod(t) for t in itertools.product(*(s.sizes for s in subs)))
        return Layout(tuple(blocks), off, M, sizes, prod(s.order for s in subs))
    raise SpecError(f"unknown group {g!r}")


def character_data(g: GroupSpec, v: RepSpec) -> CharacterData:
    """Joint weight polynomials of ``v`` for every class tuple of ``g``."""
    validate(g, v)
    return _char(g, v)


def _char(g: GroupSpec, v: RepSpec) -> CharacterData:
    lay = layout_of(g)
    fold = lay.fold
    rank = lay.cont_rank + 1
    if isinstance(v, Std):
        poly = WeightPoly.from_weights(tuple(int(i == j) for j in range(g.n)) + (0,) for i in range(g.n))
        return CharacterData(lay, (poly,))
    if isinstance(v, TorusWeights):
        return CharacterData(lay, (WeightPoly.from_weights((w + (0,) for w in v.weights), rank=rank),))
    if isinstance(v, FiniteGiven):
        return CharacterData(lay, tuple(WeightPoly.from_weights(((e,) for e in c.exponents), rank=1) for c in g.classes))
    if isinstance(v, Dual):
        inner = _char(g, v.rep)
        return CharacterData(lay, tuple(dualize(p, fold=fold) for p in inner.polys))
    if isinstance(v, (DirectSum, Tensor)):
        parts = [_char(g, p).polys for p in v.parts]
        op = add if isinstance(v, DirectSum) else (lambda x, y: multiply(x, y, fold=fold))
        out = []
        for polys in zip(*parts):
            acc = polys[0]
            for p in polys[1:]:
                acc = op(acc, p)
            out.append(acc)
        return CharacterData(lay, tuple(out))
    if isinstance(v, Exterior):
        return CharacterData(lay, tuple(elementary(p, v.k, fold=fold) for p in _char(g, v.rep).polys))
    if isinstance(v, Symmetric):
        return CharacterData(lay, tuple(complete(p, v.k, fold=fold) for p in _char(g, v.rep).polys))
    if isinstance(v, ExternalTensor):
        subs = [(f, layout_of(f), _char(f, leg)) for f, leg in zip(g.factors, v.legs)]
        offsets, off = [], 0
        for _, s, _ in subs:
            offsets.append(off)
            off += s.cont_rank
        out = []
        for idx in itertools.product(*(range(len(s.sizes)) for _, s, _ in subs)):
            acc = WeightPoly._raw(rank, {(0,) * rank: 1})
            for (f, s, data), o, i in zip(subs, offsets, idx):
                scale_ph = lay.modulus // s.modulus
                p = data.polys[i]
                pre, post = (0,) * o, (0,) * (lay.cont_rank - o - s.cont_rank)
                lifted = {}
                for w, c in p.terms.items():
                    key = fold(pre + w[:-1] + post + (w[-1] * scale_ph,))
                    lifted[key] = lifted.get(key, 0) + c
                acc = multiply(acc, WeightPoly._raw(rank, lifted), fold=fold)
            out.append(acc)
        return CharacterData(lay, tuple(out))
    raise SpecError(f"unknown representation node {v!r}")


def is_self_dual_classes(g: FiniteClasses) -> bool:
    """True when every class's exponent multiset is closed under negation (real traces)."""
    M = g.modulus
    return all(sorted(c.exponents) == sorted((-e) % M for e in c.exponents) for c in g.classes)


def weights_list(p: WeightPoly) -> list[tuple[int, ...]]:
    """Expand a multiplicity polynomial back into a sorted weight list."""
    out: list[tuple[int, ...]] = []
    for w, c in p.items():
        out.extend([w] * c)
    return out


def cyclic(n: int) -> FiniteClasses:
    """Z/n acting on C by the weight-1 character."""
    if not isinstance(n, int) or n < 1:
        raise SpecError(f"cyclic(n) needs a positive integer, got {n!r}")
    return FiniteClasses(n, tuple(ClassDatum(1, (k,)) for k in range(n)), n, name=f"cyclic({n})")
