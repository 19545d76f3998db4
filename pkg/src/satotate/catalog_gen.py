"""Regenerate the finite-subgroup catalog of SU(2).

Usage::

    python -m satotate.catalog_gen [--out DIR]

Each group is generated twice.  The floating-point pass closes two unit
quaternion generators under multiplication, splits the elements into
conjugacy classes, and snaps each class's eigenphase to a rational with
denominator dividing |G|.  The exact pass redoes closure and class splitting
with 2x2 matrices over (1/2) Z[zeta_N], and checks that every class trace equals
zeta^k + zeta^-k for the snapped k.  A file is written only when both passes
produce the same class data.
"""

from __future__ import annotations

import argparse
import cmath
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .catalog import DATA_DIR, file_for, write_entry
from .cyclotomic import CyclotomicField

TOL = 1e-9


# ---------------------------------------------------------------- float pass


def _quat(w, x, y, z) -> np.ndarray:
    return np.array([[w + 1j * x, y + 1j * z], [-y + 1j * z, w - 1j * x]])


def _key(m: np.ndarray) -> tuple:
    return tuple(np.round(np.concatenate([m.real.ravel(), m.imag.ravel()]), 7) + 0.0)


def float_closure(gens: list[np.ndarray], limit: int = 10_000) -> list[np.ndarray]:
    ident = np.eye(2, dtype=complex)
    seen = {_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = _key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        frontier = nxt
        if len(seen) > limit:
            raise RuntimeError("closure did not terminate; generators do not span a finite group")
    return list(seen.values())


def float_classes(elems: list[np.ndarray]) -> list[list[int]]:
    keys = {_key(e): i for i, e in enumerate(elems)}
    assigned = [-1] * len(elems)
    classes = []
    for i, x in enumerate(elems):
        if assigned[i] >= 0:
            continue
        members = set()
        for g in elems:
            members.add(keys[_key(g @ x @ g.conj().T)])
        for j in members:
            assigned[j] = len(classes)
        classes.append(sorted(members))
    return classes


def snap_phase(trace: complex, order: int) -> Fraction:
    """Eigenphase theta/(2 pi) in [0, 1/2] of an SU(2) element, snapped to denominator |G|."""
    if abs(trace.imag) > TOL:
        raise ValueError("SU(2) traces are real")
    t = max(-2.0, min(2.0, trace.real))
    frac = math.acos(t / 2) / (2 * math.pi)
    k = round(frac * order)
    if abs(2 * math.cos(2 * math.pi * k / order) - t) > TOL:
        raise ValueError(f"trace {t} is not 2cos(2 pi k/{order})")
    return Fraction(k, order)


def float_class_data(gens: list[np.ndarray]) -> tuple[int, list[tuple[int, Fraction]]]:
    elems = float_closure(gens)
    order = len(elems)
    out = []
    for members in float_classes(elems):
        tr = complex(np.trace(elems[members[0]]))
        out.append((len(members), snap_phase(tr, order)))
    return order, out


# ---------------------------------------------------------------- exact pass


class ExactSU2:
    """2x2 matrices whose entries are (1/2) Z[zeta_N], stored doubled as integer vectors."""

    def __init__(self, n: int):
        self.F = CyclotomicField(n)

    def mat(self, entries):
        return tuple(tuple(e) for e in entries)

    def mul(self, x, y):
        F = self.F
        out = []
        for i in range(2):
            for j in range(2):
                acc = F.add(F.mul(x[2 * i], y[j]), F.mul(x[2 * i + 1], y[2 + j]))
                if any(c % 2 for c in acc):
                    raise ArithmeticError("product left (1/2) Z[zeta]; denominators are wrong")
                out.append(tuple(c // 2 for c in acc))
        return tuple(out)

    def adjoint(self, x):
        F = self.F
        return (F.conj(x[0]), F.conj(x[2]), F.conj(x[1]), F.conj(x[3]))

    def identity(self):
        two = self.F.scale(self.F.one(), 2)
        return (two, self.F.zero(), self.F.zero(), two)

    def trace2(self, x):
        # doubled trace
        return self.F.add(x[0], x[3])


def exact_class_data(ring: ExactSU2, gens, modulus: int, limit: int = 10_000):
    ident = ring.identity()
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = ring.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        if len(seen) > limit:
            raise RuntimeError("exact closure did not terminate")
    elems = list(seen)
    order = len(elems)
    unassigned = set(elems)
    F = ring.F
    out = []
    while unassigned:
        x = next(iter(sorted(unassigned)))
        cls = {ring.mul(ring.mul(g, x), ring.adjoint(g)) for g in elems}
        unassigned -= cls
        t2 = ring.trace2(x)
        match = None
        for k in range(modulus // 2 + 1):
            e = k * (F.n // modulus)
            cand = F.scale(F.add(F.zeta(e), F.zeta(-e)), 2)
            if cand == t2:
                match = Fraction(k, modulus)
                break
        if match is None:
            raise ArithmeticError("class trace is not zeta^k + zeta^-k")
        out.append((len(cls), match))
    return order, out


# ---------------------------------------------------------------- group definitions


def _lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


def _float_gens(name: str, n: int = 0) -> list[np.ndarray]:
    h = 0.5
    omega = _quat(h, h, h, h)
    if name == "binary_dihedral":
        z = cmath.exp(1j * math.pi / n)
        return [np.array([[z, 0], [0, z.conjugate()]]), _quat(0, 0, 1, 0)]
    if name == "binary_tetrahedral":
        return [_quat(0, 1, 0, 0), omega]
    if name == "binary_octahedral":
        s = 1 / math.sqrt(2)
        return [_quat(s, s, 0, 0), omega]
    if name == "binary_icosahedral":
        phi = (1 + math.sqrt(5)) / 2
        return [omega, _quat(phi / 2, 1 / (2 * phi), 0.5, 0)]
    raise KeyError(name)


def _exact_gens(name: str, n: int = 0):
    """Exact generators, plus the cyclotomic conductor their entries need."""
    if name == "binary_dihedral":
        N = _lcm(2 * n, 4)
        ring = ExactSU2(N)
        F = ring.F
        z = F.zeta(N // (2 * n))
        a = (F.scale(z, 2), F.zero(), F.zero(), F.scale(F.conj(z), 2))
        two = F.scale(F.one(), 2)
        b = (F.zero(), two, F.neg(two), F.zero())
        return ring, [a, b], N

    def quat(ring, w, x, y, z):
        # entries given doubled: w, x, y, z are (1/2)Z[zeta] elements times 2
        F = ring.F
        i = F.zeta(F.n // 4)
        return (F.add(w, F.mul(i, x)), F.add(y, F.mul(i, z)), F.add(F.neg(y), F.mul(i, z)), F.sub(w, F.mul(i, x)))

    cond = {"binary_tetrahedral": 4, "binary_octahedral": 8, "binary_icosahedral": 20}[name]
    return cond, quat


def build_exact(name: str, n: int, modulus: int):
    if name == "binary_dihedral":
        ring, gens, _ = _exact_gens(name, n)
        return ring, gens
    cond, quat = _exact_gens(name, n)
    ring = ExactSU2(_lcm(cond, modulus))
    F = ring.F
    one = F.one()
    omega = quat(ring, one, one, one, one)
    if name == "binary_tetrahedral":
        two = F.scale(one, 2)
        return ring, [quat(ring, F.zero(), two, F.zero(), F.zero()), omega]
    if name == "binary_octahedral":
        z8 = F.zeta(F.n // 8)
        sqrt2 = F.add(z8, F.conj(z8))
        return ring, [quat(ring, sqrt2, sqrt2, F.zero(), F.zero()), omega]
    z10 = F.zeta(F.n // 10)
    phi = F.add(z10, F.conj(z10))
    inv_phi = F.sub(phi, one)
    return ring, [omega, quat(ring, phi, inv_phi, one, F.zero())]


def generate(name: str, n: int = 0) -> dict:
    """Class data for one binary polyhedral or binary dihedral group, checked two ways."""
    order, fl = float_class_data(_float_gens(name, n))
    modulus = _lcm(*(f.denominator for _, f in fl))
    ring, gens = build_exact(name, n, modulus)
    ex_order, ex = exact_class_data(ring, gens, modulus)
    if ex_order != order:
        raise AssertionError(f"{name}: float order {order} != exact order {ex_order}")
    if sorted(fl) != sorted(ex):
        raise AssertionError(f"{name}: float and exact class data disagree")
    classes = []
    for size, frac in sorted(fl, key=lambda t: (t[1], t[0])):
        k = frac.numerator * (modulus // frac.denominator)
        classes.append({"size": size, "exponents": sorted([k % modulus, (-k) % modulus])})
    label = f"binary_dihedral({4 * n})" if name == "binary_dihedral" else name
    return {
        "name": label,
        "order": order,
        "modulus": modulus,
        "classes": classes,
        "method": (
            f"closure of explicit unit-quaternion generators; float classes snapped to denominator {order}; "
            f"re-verified exactly in Z[zeta_{ring.F.n}]/2"
        ),
    }


def all_entries(max_dihedral: int = 30):
    for n in range(1, max_dihedral + 1):
        yield generate("binary_dihedral", n)
    for name in ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral"):
        yield generate(name)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA_DIR)
    ap.add_argument("--max-dihedral", type=int, default=30)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for entry in all_entries(args.max_dihedral):
        path = args.out / file_for(entry["name"])
        write_entry(path, entry)
        print(f"wrote {path.name}: order {entry['order']}, {len(entry['classes'])} classes, modulus {entry['modulus']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
