"""Eventual fixation of the A allele at finite N.

The probability h(i) that the chain started at count i is absorbed at N
solves the harmonic system h(0) = 0, h(N) = 1, h(i) = sum_j P(i,j) h(j).
In the neutral chain the answer is exactly i/N; with selection the system
is solved numerically and cross-checked by Monte Carlo.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve

from wfinfo.active_info import InfoBreakdown, LogBase, active_info_from_probs
from wfinfo.errors import CapacityError, UnsupportedParametersError
from wfinfo.wf_chain import WfParams, _check_count, transition_matrix

EXACT_SOLVE = "exact_solve"
MONTE_CARLO = "monte_carlo"

Z_95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class FixationResult:
    """A fixation probability and how it was obtained.

    ``trials``, ``ci_halfwidth`` (95%, normal approximation) and
    ``censored`` are populated only for Monte Carlo estimates.
    """

    p_fix: float
    method: str
    trials: int | None = None
    ci_halfwidth: float | None = None
    censored: int | None = None


def _require_no_mutation(params: WfParams, what: str) -> None:
    if params.has_mutation:
        raise UnsupportedParametersError(f"{what} requires mu_a_to_small = mu_small_to_a = 0")


def exact_fixation_curve(
    params: WfParams,
    dense_cap: int = 2000,
    iterative_fallback: bool = True,
    damping: float = 0.9,
    tol: float = 1e-12,
    max_iters: int | None = None,
) -> np.ndarray:
    """Absorption-at-N probability h(i) for every count i = 0..N (no mutation).

    Uses a dense partial-pivoting solve of the interior linear system for
    N <= dense_cap and a damped fixed-point iteration h <- P h (boundary
    entries pinned) beyond it.  The returned vector satisfies the harmonic
    equations with max residual below 1e-10.
    """
    _require_no_mutation(params, "exact fixation solve")
    n = params.n_pop
    if n > dense_cap and not iterative_fallback:
        raise CapacityError(
            f"N={n} exceeds the dense solver cap {dense_cap} and the iterative fallback is disabled"
        )
    p = transition_matrix(params)
    h = np.empty(n + 1)
    h[0], h[n] = 0.0, 1.0

    if n <= dense_cap:
        interior = np.arange(1, n)
        a = np.eye(n - 1) - p[np.ix_(interior, interior)]
        h[1:n] = solve(a, p[interior, n])
    else:
        if max_iters is None:
            max_iters = 200 * n + 10_000
        h[1:n] = np.arange(1, n) / n
        for _ in range(max_iters):
            nxt = p[1:n] @ h
            diff = np.max(np.abs(nxt - h[1:n]))
            h[1:n] = (1.0 - damping) * h[1:n] + damping * nxt
            if diff < tol:
                break
        else:
            raise RuntimeError(f"fixed-point iteration did not reach tol={tol} in {max_iters} steps")

    residual = np.max(np.abs(h[1:n] - p[1:n] @ h))
    if residual >= 1e-10:
        raise RuntimeError(f"harmonic residual {residual:.3e} exceeds 1e-10")
    return np.clip(h, 0.0, 1.0)


def exact_fixation_prob(params: WfParams, i: int, **solver_kwargs) -> FixationResult:
    """Eventual fixation probability from count i via the linear solve."""
    i = _check_count(params, i)
    if i == 0 or i == params.n_pop:
        _require_no_mutation(params, "exact fixation solve")
        return FixationResult(p_fix=float(i == params.n_pop), method=EXACT_SOLVE)
    h = exact_fixation_curve(params, **solver_kwargs)
    return FixationResult(p_fix=float(h[i]), method=EXACT_SOLVE)


def mc_fixation_prob(
    params: WfParams,
    i: int,
    trials: int,
    seed: int,
    max_gens: int | None = None,
    workers: int = 1,
) -> FixationResult:
    """Monte Carlo fixation probability from count i.

    A trial succeeds when the walk reaches N; with mu2 > 0 the state 0 is
    not absorbing, so "fixation" means first passage to N before the
    generation cap (default 50 * N).  Runs that hit the cap are counted in
    ``censored``, never silently folded into the failures.  Each trial
    draws from its own substream derived from (seed, trial index), so the
    result is identical for any ``workers`` setting.
    """
    from wfinfo import _kernels

    i = _check_count(params, i)
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if max_gens is None:
        max_gens = 50 * params.n_pop
    if max_gens < 1:
        raise ValueError(f"max_gens must be positive, got {max_gens}")
    successes, censored = _kernels.fixation_counts(
        seed,
        trials,
        params.n_pop,
        params.sel,
        params.mu_a_to_small,
        params.mu_small_to_a,
        i,
        max_gens,
        workers=workers,
    )
    p_hat = successes / trials
    halfwidth = Z_95 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return FixationResult(
        p_fix=p_hat,
        method=MONTE_CARLO,
        trials=trials,
        ci_halfwidth=halfwidth,
        censored=censored,
    )


def fixation_ai(
    params: WfParams,
    i: int,
    base: LogBase = LogBase.NATS,
    method: str = EXACT_SOLVE,
    trials: int = 100_000,
    seed: int = 0,
    max_gens: int | None = None,
    workers: int = 1,
) -> InfoBreakdown:
    """Active information of eventual fixation relative to the neutral i/N law.

    The endogenous side is the exact neutral fixation probability i/N; the
    exogenous side is the non-neutral fixation probability computed by the
    selected method.
    """
    i = _check_count(params, i)
    if i == 0 or i == params.n_pop:
        raise ValueError(f"i={i} is a boundary state; fixation there is degenerate")
    if method == EXACT_SOLVE:
        p_alt = exact_fixation_prob(params, i).p_fix
    elif method == MONTE_CARLO:
        result = mc_fixation_prob(params, i, trials, seed, max_gens=max_gens, workers=workers)
        p_alt = result.p_fix
        if p_alt == 0.0:
            warnings.warn(
                f"no fixations in {trials} trials; active information is -inf "
                "and likely reflects too few trials",
                stacklevel=2,
            )
    else:
        raise ValueError(f"unknown method {method!r}; use {EXACT_SOLVE!r} or {MONTE_CARLO!r}")
    return active_info_from_probs(i / params.n_pop, p_alt, base)
