"""Compiled Monte Carlo kernels with per-trial reproducible streams.

Trial t reseeds the (thread-local) generator with splitmix64(master, t),
so every trial's outcome is a pure function of (master seed, trial index).
Chunks of the trial range can therefore be run in any order on any number
of threads; the integer totals are identical either way.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

CHUNK = 16384


@njit(cache=True, nogil=True)
def _trial_seed(master, index):
    z = master + index * np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return np.uint32(z & np.uint64(0xFFFFFFFF))


@njit(cache=True, nogil=True)
def _fixation_chunk(master, start, stop, n_pop, sel, mu1, mu2, i0, max_gens):
    # outcome codes: 1 fixation, 0 loss, 2 censored at the generation cap
    successes = 0
    censored = 0
    for t in range(start, stop):
        np.random.seed(_trial_seed(master, np.uint64(t)))
        i = i0
        if i == n_pop:
            outcome = 1
        elif i == 0 and mu2 == 0.0:
            outcome = 0
        else:
            outcome = 2
            for _ in range(max_gens):
                denom = i * (1.0 + sel) + (n_pop - i)
                th = (i * (1.0 + sel) * (1.0 - mu1) + (n_pop - i) * mu2) / denom
                if th <= 0.0:
                    i = 0
                elif th >= 1.0:
                    i = n_pop
                else:
                    i = np.random.binomial(n_pop, th)
                if i == n_pop:
                    outcome = 1
                    break
                if i == 0 and mu2 == 0.0:
                    outcome = 0
                    break
        if outcome == 1:
            successes += 1
        elif outcome == 2:
            censored += 1
    return successes, censored


@njit(cache=True, nogil=True)
def _sde_chunk(master, start, stop, alpha, v1, v2, p0, dt, t_max):
    # Euler-Maruyama with clamp-and-absorb boundaries; a boundary only
    # absorbs when its inbound mutation pressure is zero.
    n_steps = int(t_max / dt)
    absorbed_hi = 0
    absorbed_lo = 0
    censored = 0
    for t in range(start, stop):
        np.random.seed(_trial_seed(master, np.uint64(t)))
        p = p0
        outcome = 2
        if p <= 0.0 and v2 == 0.0:
            outcome = 0
        elif p >= 1.0 and v1 == 0.0:
            outcome = 1
        else:
            for _ in range(n_steps):
                drift = alpha * p * (1.0 - p) - v1 * p + v2 * (1.0 - p)
                var = p * (1.0 - p)
                p = p + drift * dt + np.sqrt(var * dt) * np.random.standard_normal()
                if p <= 0.0:
                    p = 0.0
                    if v2 == 0.0:
                        outcome = 0
                        break
                elif p >= 1.0:
                    p = 1.0
                    if v1 == 0.0:
                        outcome = 1
                        break
        if outcome == 1:
            absorbed_hi += 1
        elif outcome == 0:
            absorbed_lo += 1
        else:
            censored += 1
    return absorbed_hi, absorbed_lo, censored


@njit(cache=True, nogil=True)
def _tmrca_chunk(master, start, stop, n_pop, max_gens, out):
    # Two lineages pick parents uniformly each generation; coalescence is
    # the first generation they pick the same one.  -1 marks a censored run.
    for t in range(start, stop):
        np.random.seed(_trial_seed(master, np.uint64(t)))
        k = -1
        for g in range(1, max_gens + 1):
            a = np.random.randint(0, n_pop)
            b = np.random.randint(0, n_pop)
            if a == b:
                k = g
                break
        out[t] = k


def _chunks(n: int) -> list[tuple[int, int]]:
    return [(a, min(a + CHUNK, n)) for a in range(0, n, CHUNK)]


def _run_chunked(fn, n: int, workers: int) -> list:
    parts = _chunks(n)
    if workers <= 1 or len(parts) == 1:
        return [fn(a, b) for a, b in parts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), parts))


def fixation_counts(
    seed: int,
    trials: int,
    n_pop: int,
    sel: float,
    mu1: float,
    mu2: float,
    i0: int,
    max_gens: int,
    workers: int = 1,
) -> tuple[int, int]:
    """Run fixation trials; returns (successes, censored)."""
    master = np.uint64(seed)

    def part(a, b):
        return _fixation_chunk(master, a, b, n_pop, float(sel), float(mu1), float(mu2), i0, max_gens)

    results = _run_chunked(part, trials, workers)
    return sum(r[0] for r in results), sum(r[1] for r in results)


def sde_absorption_counts(
    seed: int,
    n_paths: int,
    alpha: float,
    v1: float,
    v2: float,
    p0: float,
    dt: float,
    t_max: float,
    workers: int = 1,
) -> tuple[int, int, int]:
    """Run diffusion paths; returns (absorbed_at_1, absorbed_at_0, censored)."""
    master = np.uint64(seed)

    def part(a, b):
        return _sde_chunk(master, a, b, float(alpha), float(v1), float(v2), float(p0), float(dt), float(t_max))

    results = _run_chunked(part, n_paths, workers)
    return (
        sum(r[0] for r in results),
        sum(r[1] for r in results),
        sum(r[2] for r in results),
    )


def tmrca_samples(seed: int, n_samples: int, n_pop: int, max_gens: int, workers: int = 1) -> np.ndarray:
    """Sample pairwise coalescence times; -1 marks runs censored at max_gens."""
    master = np.uint64(seed)
    out = np.empty(n_samples, dtype=np.int64)

    def part(a, b):
        _tmrca_chunk(master, a, b, n_pop, max_gens, out)

    _run_chunked(part, n_samples, workers)
    return out
