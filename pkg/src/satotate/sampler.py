"""Monte Carlo estimates of Sato-Tate moments under Haar measure.

This is an independent statistical check on the exact engine: draw Haar
random group elements, take traces, average ``z^a conj(z)^b``.

Randomness comes from numpy's counter-based Philox generator.  The sample
range is cut into fixed-size chunks and chunk ``i`` always draws from
substream ``i`` of the seed, so output does not depend on how chunks are
scheduled across workers.  Per-chunk sums use numpy's pairwise summation and
chunk partials are combined with ``math.fsum``.  Only the seeded chunk
assignment is bit-stable.  Reordering the reduction changes results by at
most ~1e-12.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Optional

import numpy as np

from .errors import EvaluationError
from .groups import CharacterData, GroupSpec, RepSpec, character_data, describe_group, describe_rep

CHUNK = 8192
MAX_RETRIES = 3


class DegenerateSampleError(EvaluationError):
    """Orthonormalization kept failing after the bounded number of redraws."""


@dataclass(frozen=True)
class SampleConfig:
    group: GroupSpec
    rep: RepSpec
    samples: int
    seed: int
    amax: int
    bmax: int
    label: str = ""

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if self.amax < 0 or self.bmax < 0:
            raise ValueError("moment bounds must be nonnegative")


@dataclass
class EmpiricalMoments:
    mean: dict[tuple[int, int], complex]
    stderr: dict[tuple[int, int], float]
    samples: int
    retries: int = 0
    meta: dict = field(default_factory=dict)

    def within(self, exact: dict[tuple[int, int], int], k: float = 5.0, floor: float = 1e-9) -> dict[tuple[int, int], bool]:
        """Per-cell check ``|mean - exact| <= k * stderr`` (plus a tiny floor for zero-variance cells)."""
        return {c: abs(self.mean[c] - exact[c]) <= k * self.stderr[c] + floor for c in self.mean if c in exact}


# ---------------------------------------------------------------- Haar elements


def haar_unitary(n: int, size: int, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """``size`` Haar-random n x n unitaries and the number of redraws needed.

    Ginibre matrix, QR, then each column of Q is multiplied by the phase of
    the matching diagonal entry of R so that R has a positive diagonal.
    Skipping that correction gives a non-Haar distribution.
    """
    z = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))) / math.sqrt(2)
    retries = 0
    while True:
        q, r = np.linalg.qr(z)
        d = np.diagonal(r, axis1=1, axis2=2)
        bad = np.abs(d).min(axis=1) < 1e-12
        if not bad.any():
            break
        retries += 1
        if retries > MAX_RETRIES:
            raise DegenerateSampleError("Ginibre draw stayed singular after retries")
        m = int(bad.sum())
        z[bad] = (rng.standard_normal((m, n, n)) + 1j * rng.standard_normal((m, n, n))) / math.sqrt(2)
    return q * (d / np.abs(d))[:, None, :], retries


def haar_special_unitary(n: int, size: int, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """Haar SU(n): a Haar U(n) sample times exp(-i phi / n), where det = exp(i phi).

    For V in SU(n), VU has the same determinant as U, so the corrected map
    commutes with left translation by SU(n) and pushes Haar measure on U(n) to
    a left-invariant probability measure on SU(n), i.e. Haar measure.
    """
    u, retries = haar_unitary(n, size, rng)
    phi = np.angle(np.linalg.det(u))
    return u * np.exp(-1j * phi / n)[:, None, None], retries


def _eigen_angles(mats: np.ndarray) -> np.ndarray:
    return np.angle(np.linalg.eigvals(mats))


# ---------------------------------------------------------------- traces


def _sample_chunk(data: CharacterData, size: int, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    lay = data.layout
    theta = np.zeros((size, lay.cont_rank))
    retries = 0
    for blk in lay.blocks:
        sl = slice(blk.offset, blk.offset + blk.size)
        if blk.kind == "torus":
            theta[:, sl] = 2 * math.pi * rng.random((size, blk.size))
        elif blk.kind == "unitary":
            u, r = haar_unitary(blk.size, size, rng)
            theta[:, sl] = _eigen_angles(u)
            retries += r
        else:
            u, r = haar_special_unitary(blk.size, size, rng)
            theta[:, sl] = _eigen_angles(u)
            retries += r
    probs = np.asarray(lay.sizes, dtype=float) / lay.order
    cls = rng.choice(len(lay.sizes), size=size, p=probs) if len(lay.sizes) > 1 else np.zeros(size, dtype=int)
    out = np.zeros(size, dtype=complex)
    for i, poly in enumerate(data.polys):
        mask = cls == i
        if not mask.any():
            continue
        items = poly.items()
        w = np.array([t[0] for t in items], dtype=float)
        c = np.array([t[1] for t in items], dtype=float)
        phase = theta[mask] @ w[:, :-1].T + 2 * math.pi * w[:, -1] / lay.modulus
        out[mask] = np.exp(1j * phase) @ c
    return out, retries


def _streams(seed: int, count: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(s)) for s in children]


def sample_traces(g: GroupSpec, v: RepSpec, n: int, seed: int, workers: Optional[int] = None) -> tuple[np.ndarray, int]:
    """Traces of ``n`` Haar-random elements of ``g`` acting on ``v``; also returns the redraw count."""
    data = character_data(g, v)
    sizes = [min(CHUNK, n - i) for i in range(0, n, CHUNK)]
    streams = _streams(seed, len(sizes))

    def run(i):
        return _sample_chunk(data, sizes[i], streams[i])

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    return np.concatenate([p[0] for p in parts]), sum(p[1] for p in parts)


def haar_sample_trace(g: GroupSpec, v: RepSpec, rng: np.random.Generator) -> complex:
    """Trace of one Haar-random element, drawn from the caller's generator."""
    z, _ = _sample_chunk(character_data(g, v), 1, rng)
    return complex(z[0])


# ---------------------------------------------------------------- estimation


def _fsum_complex(chunks: list[np.ndarray]) -> complex:
    re = math.fsum(float(np.sum(c.real)) for c in chunks)
    im = math.fsum(float(np.sum(c.imag)) for c in chunks)
    return complex(re, im)


def estimate_moments(cfg: SampleConfig, workers: Optional[int] = None) -> EmpiricalMoments:
    """Sample means and standard errors of ``z^a conj(z)^b`` for a <= amax, b <= bmax."""
    z, retries = sample_traces(cfg.group, cfg.rep, cfg.samples, cfg.seed, workers)
    n = cfg.samples
    chunks = [z[i : i + CHUNK] for i in range(0, n, CHUNK)]
    zc = [c.conj() for c in chunks]
    mean: dict[tuple[int, int], complex] = {}
    err: dict[tuple[int, int], float] = {}
    cells = [(a, b) for a in range(cfg.amax + 1) for b in range(cfg.bmax + 1)]
    canon: dict[tuple[int, int], tuple[complex, float]] = {}
    for a, b in cells:
        key = (a, b) if a >= b else (b, a)
        if key in canon:
            continue
        p, q = key
        if p == 0:
            canon[key] = (1 + 0j, 0.0)
            continue
        vals = [c**p * d**q for c, d in zip(chunks, zc)]
        m = _fsum_complex(vals) / n
        if p == q:
            m = complex(m.real, 0.0)  # |z|^(2a) is real; drop rounding noise
        ss = math.fsum(float(np.sum(np.abs(x - m) ** 2)) for x in vals)
        canon[key] = (m, math.sqrt(ss / (n * (n - 1))) if n > 1 else float("inf"))
    for a, b in cells:
        m, e = canon[(a, b) if a >= b else (b, a)]
        mean[(a, b)] = m if a >= b else m.conjugate()
        err[(a, b)] = e
    label = cfg.label or f"{describe_group(cfg.group)} {describe_rep(cfg.rep)}"
    return EmpiricalMoments(mean, err, n, retries, meta={"label": label, "seed": cfg.seed})


# ---------------------------------------------------------------- Gaussian limit


@dataclass
class GaussianRow:
    n: int
    a: int
    exact: int
    gaussian: int
    diff: int
    estimate: Optional[complex] = None
    stderr: Optional[float] = None


def gaussian_limit_report(n_list, amax: int, samples: int = 0, seed: int = 0) -> list[GaussianRow]:
    """Compare F_{U(n),Std}(a, a) with the complex Gaussian moment a!.

    The two agree for a <= n.  With ``samples > 0`` a Monte Carlo estimate of
    each diagonal moment is attached.
    """
    from .groups import Std, Unitary
    from .moments import Engine

    rows = []
    for n in n_list:
        eng = Engine(Unitary(n), Std())
        emp = None
        if samples:
            emp = estimate_moments(SampleConfig(Unitary(n), Std(), samples, seed, amax, amax))
        for a in range(amax + 1):
            exact = eng.value(a, a)
            row = GaussianRow(n, a, exact, factorial(a), factorial(a) - exact)
            if emp is not None:
                row.estimate, row.stderr = emp.mean[(a, a)], emp.stderr[(a, a)]
            rows.append(row)
    return rows
