"""Acceptance gate A1-A10; each test prints exactly one PASS/FAIL line.

Exact criteria compare integers with ==.  A9 is a statistical gate: 50
seeds per group, and at least 99% of the seeded runs must have every
estimate within 5 standard errors.
"""

import time
from math import factorial

import oracles
from satotate.analyzer import (
    crude_bound_threshold,
    increasing_from,
    infer_dimension,
    separation_index,
    verify_torsion_agreement,
)
from satotate.catalog import catalog_names, load, su2_finite_names, subgroup_pairs
from satotate.groups import SpecialUnitary, Std, Torus, TorusWeights, Unitary, validate
from satotate.moments import Engine, engine_for, moment_table
from satotate.sampler import SampleConfig, estimate_moments, gaussian_limit_report


def test_a1_factorial_identity(acceptance):
    t = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 5):
        eng = Engine(Unitary(n), Std())
        bad += [(n, a) for a in range(n + 1) if eng.value(a, a) != factorial(a)]
    dt = time.perf_counter() - t
    ok = not bad and dt < 10
    assert acceptance("A1", ok, f"F_U(n)(a,a) = a! for a <= n, n in 2..5; mismatches {bad}", dt)


def test_a2_syt_oracle(acceptance):
    t = time.perf_counter()
    bad = []
    for n in (2, 3):
        eng = Engine(Unitary(n), Std())
        bad += [(n, a) for a in range(11) if eng.value(a, a) != oracles.unitary_diagonal(n, a)]
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    assert acceptance("A2", ok, f"U(2), U(3) diagonal a <= 10 equals sum (f^lambda)^2; mismatches {bad}", dt)


def test_a3_ballot_oracle(acceptance):
    t = time.perf_counter()
    eng = Engine(SpecialUnitary(2), Std())
    bad = [(a, b) for a in range(21) for b in range(21 - a) if eng.value(a, b) != oracles.ballot_walks(a + b)]
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    assert acceptance("A3", ok, f"SU(2) F(a,b) equals ballot walks for a+b <= 20 (231 cells); mismatches {bad}", dt)


def test_a4_torsion_non_isolation(acceptance):
    t = time.perf_counter()
    g, v = Torus(1), TorusWeights([(1,)])
    bad = []
    for n in range(1, 13):
        for degree in range(1, 13):
            full = verify_torsion_agreement(g, v, n, degree).full_agreement
            if full != (n > degree):
                bad.append((n, degree))
    dt = time.perf_counter() - t
    ok = not bad and dt < 5
    assert acceptance("A4", ok, f"U(1) vs cyclic(n): full agreement iff n > degree, n,degree <= 12; failures {bad}", dt)


def test_a5_isolation_instance(acceptance):
    t = time.perf_counter()
    engines = {}
    idx = {}
    for name in su2_finite_names():
        idx[name] = separation_index("su2-std", name, engines=engines).index
    top = max(v for v in idx.values() if v is not None)
    winners = [k for k, v in idx.items() if v == top]
    # confirm the 2I witness independently
    r = separation_index("su2-std", "binary_icosahedral")
    a, b, _, _ = r.witness
    g = load("binary_icosahedral").group
    confirmed = oracles.class_sum([(c.size, c.exponents) for c in g.classes], g.modulus, a, b) != oracles.ballot_walks(a + b)
    lower_agree = all(
        oracles.class_sum([(c.size, c.exponents) for c in g.classes], g.modulus, x, y) == oracles.ballot_walks(x + y)
        for x in range(12)
        for y in range(12 - x)
    )
    dt = time.perf_counter() - t
    ok = (
        all(v is not None and v <= 12 for v in idx.values())
        and top == 12
        and winners == ["binary_icosahedral"]
        and confirmed
        and lower_agree
        and dt < 300
    )
    assert acceptance("A5", ok, f"{len(idx)} finite subgroups separate from SU(2) by <= 12; max {top} at {winners}", dt)


def test_a6_dimension_detection(acceptance):
    t = time.perf_counter()
    bad = []
    names = catalog_names()
    for name in names:
        e = load(name)
        est = infer_dimension(moment_table(e.group, e.rep, 12, 12), 12)
        if est.value != validate(e.group, e.rep):
            bad.append((name, est.low, est.high))
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    assert acceptance("A6", ok, f"infer_dimension at amax=12 exact for {len(names)} catalog entries; failures {bad}", dt)


def test_a7_crude_bound(acceptance):
    t = time.perf_counter()
    notes = []
    ok = True
    for n in (2, 3):
        rep = crude_bound_threshold(n, 20)
        start = increasing_from(rep.ratios)
        holds_at_end = rep.values[20] > (n - 1) ** 40
        cross = all(rep.values[a] == oracles.unitary_diagonal(n, a) for a in range(21))
        ok = ok and rep.attained and holds_at_end and start is not None and cross
        notes.append(f"n={n}: threshold {rep.threshold}, ratios increasing from a={start}")
    dt = time.perf_counter() - t
    ok = ok and dt < 120
    assert acceptance("A7", ok, "; ".join(notes), dt)


def test_a8_subgroup_inequality(acceptance):
    t = time.perf_counter()
    engines = {}

    def ev(name):
        if name not in engines:
            engines[name] = engine_for(*load(name).pair)
        return engines[name]

    pairs = subgroup_pairs()
    bad = []
    for h, g in pairs:
        eh, eg = ev(h), ev(g)
        for a in range(7):
            for b in range(7):
                if eg.value(a, b) > eh.value(a, b):
                    bad.append((h, g, a, b))
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    assert acceptance("A8", ok, f"F_G <= F_H cellwise on a,b <= 6 for {len(pairs)} pairs; violations {bad[:3]}", dt)


def test_a9_monte_carlo(acceptance):
    t = time.perf_counter()
    seeds = range(50)
    summary = []
    ok = True
    for name in ("u2-std", "su2-std"):
        e = load(name)
        exact = {(a, b): engine_for(*e.pair).value(a, b) for a in range(4) for b in range(4)}
        passed = 0
        for s in seeds:
            emp = estimate_moments(SampleConfig(e.group, e.rep, 100_000, s, 3, 3))
            passed += all(emp.within(exact, k=5.0).values())
        rate = passed / len(seeds)
        ok = ok and rate >= 0.99
        summary.append(f"{name} {passed}/{len(seeds)} seeds")
    dt = time.perf_counter() - t
    ok = ok and dt < 180
    assert acceptance("A9", ok, "N=1e5, every a,b <= 3 within 5 s.e.: " + ", ".join(summary), dt)


def test_a10_gaussian_limit(acceptance):
    t = time.perf_counter()
    rows = {(r.n, r.a): r for r in gaussian_limit_report([2, 3, 4], 5)}
    bad = []
    for n in (2, 3, 4):
        bad += [(n, a) for a in range(n + 1) if rows[(n, a)].diff != 0]
        r = rows[(n, n + 1)]
        if not (r.exact < factorial(n + 1) and r.exact == oracles.unitary_diagonal(n, n + 1)):
            bad.append((n, n + 1))
    dt = time.perf_counter() - t
    ok = not bad and dt < 30
    assert acceptance("A10", ok, f"exact = a! for a <= n and < (n+1)! at a = n+1, n in 2..4; failures {bad}", dt)
