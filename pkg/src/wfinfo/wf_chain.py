"""Forward Wright-Fisher chain for a haploid two-allele population.

Each generation, all N individuals are replaced by sampling parents with
replacement.  Selection tilts the sampling weight of the A allele by a
factor (1+s); mutation flips A->a with probability mu1 and a->A with
probability mu2 per offspring.  Given i copies of A, the next count is
Binomial(N, theta_i) where theta_i is the post-selection, post-mutation
expected A proportion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

RngLike = int | np.random.Generator


@dataclass(frozen=True)
class WfParams:
    """Model parameters.

    Parameters
    ----------
    n_pop : int
        Haploid population size N (>= 2).
    sel : float
        Selection coefficient s applied to the A allele's sampling weight.
        Must satisfy s > -1 so the sampling denominator i(1+s) + N - i
        stays positive for every count i.
    mu_a_to_small : float
        Per-offspring mutation probability A -> a (mu1), in [0, 1].
    mu_small_to_a : float
        Per-offspring mutation probability a -> A (mu2), in [0, 1].
    """

    n_pop: int
    sel: float = 0.0
    mu_a_to_small: float = 0.0
    mu_small_to_a: float = 0.0

    def __post_init__(self):
        if self.n_pop < 2:
            raise ValueError(f"n_pop must be at least 2, got {self.n_pop}")
        if not (math.isfinite(self.sel) and self.sel > -1.0):
            raise ValueError(f"sel must be a finite value greater than -1, got {self.sel}")
        for name in ("mu_a_to_small", "mu_small_to_a"):
            mu = getattr(self, name)
            if not 0.0 <= mu <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {mu}")

    @property
    def has_mutation(self) -> bool:
        return self.mu_a_to_small > 0.0 or self.mu_small_to_a > 0.0


@dataclass(frozen=True)
class Trajectory:
    """A recorded forward simulation.

    ``counts[g]`` is the number of A copies in generation g.  If the walk
    stopped in an absorbing state, ``absorbed_at`` is (generation, state).
    ``seed`` is recorded when the simulation was started from an integer
    seed rather than a live generator.
    """

    counts: np.ndarray
    params: WfParams
    seed: int | None
    absorbed_at: tuple[int, int] | None = None

    def __len__(self) -> int:
        return len(self.counts)


def _check_count(params: WfParams, i: int, name: str = "i") -> int:
    i = int(i)
    if not 0 <= i <= params.n_pop:
        raise ValueError(f"{name}={i} outside the state space 0..{params.n_pop}")
    return i


def _coerce_rng(rng: RngLike) -> tuple[np.random.Generator, int | None]:
    """Accept a seed or a live Generator; report the seed when known."""
    if isinstance(rng, np.random.Generator):
        return rng, None
    seed = int(rng)
    return np.random.default_rng(seed), seed


def theta(params: WfParams, i: int) -> float:
    """Expected A proportion among offspring given i copies of A.

    Evaluated as a single fused expression over the common denominator
    i(1+s) + N - i, which avoids cancellation when s is near 0.
    """
    i = _check_count(params, i)
    n, s = params.n_pop, params.sel
    denom = i * (1.0 + s) + (n - i)
    num = i * (1.0 + s) * (1.0 - params.mu_a_to_small) + (n - i) * params.mu_small_to_a
    return num / denom


def selection_sampling_probs(params: WfParams, i: int) -> tuple[float, float]:
    """Probabilities of sampling an A (resp. a) parent under selection.

    Mutation probabilities are ignored.  The pair sums to 1.
    """
    i = _check_count(params, i)
    n, s = params.n_pop, params.sel
    denom = i * (1.0 + s) + (n - i)
    return (i * (1.0 + s)) / denom, (n - i) / denom


def _log_binom_coeffs(n: int) -> np.ndarray:
    """log C(n, j) for j = 0..n via log-gamma."""
    g = gammaln(np.arange(n + 2, dtype=np.float64))
    j = np.arange(n + 1)
    return g[n + 1] - g[j + 1] - g[n - j + 1]


def log_transition_prob(params: WfParams, i: int, j: int) -> float:
    """log P(i -> j) for one generation, computed in log space."""
    i = _check_count(params, i)
    j = _check_count(params, j, name="j")
    n = params.n_pop
    th = theta(params, i)
    if th <= 0.0:
        return 0.0 if j == 0 else -math.inf
    if th >= 1.0:
        return 0.0 if j == n else -math.inf
    log_coeff = float(gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1))
    return log_coeff + j * math.log(th) + (n - j) * math.log1p(-th)


def transition_prob(params: WfParams, i: int, j: int) -> float:
    """One-generation transition probability P(i -> j)."""
    return math.exp(log_transition_prob(params, i, j))


def transition_row(params: WfParams, i: int) -> np.ndarray:
    """Full transition row P(i, .) over counts 0..N; sums to 1."""
    i = _check_count(params, i)
    n = params.n_pop
    th = theta(params, i)
    row = np.zeros(n + 1)
    if th <= 0.0:
        row[0] = 1.0
        return row
    if th >= 1.0:
        row[n] = 1.0
        return row
    j = np.arange(n + 1)
    logpmf = _log_binom_coeffs(n) + j * math.log(th) + (n - j) * math.log1p(-th)
    return np.exp(logpmf)


def transition_matrix(params: WfParams) -> np.ndarray:
    """Dense (N+1) x (N+1) transition matrix of the chain."""
    n = params.n_pop
    thetas = np.array([theta(params, i) for i in range(n + 1)])
    p = np.zeros((n + 1, n + 1))
    interior = (thetas > 0.0) & (thetas < 1.0)
    p[~interior & (thetas <= 0.0), 0] = 1.0
    p[~interior & (thetas >= 1.0), n] = 1.0
    if interior.any():
        th = thetas[interior][:, None]
        j = np.arange(n + 1)[None, :]
        logpmf = _log_binom_coeffs(n)[None, :] + j * np.log(th) + (n - j) * np.log1p(-th)
        p[interior] = np.exp(logpmf)
    return p


def maxent_initial(n_pop: int) -> np.ndarray:
    """Uniform initial law over the interior counts {1, .., N-1}.

    This is the maximum-entropy distribution given that both alleles are
    present at time 0, so the boundary counts 0 and N carry no weight.
    """
    if n_pop < 2:
        raise ValueError(f"n_pop must be at least 2, got {n_pop}")
    w = np.zeros(n_pop + 1)
    w[1:n_pop] = 1.0 / (n_pop - 1)
    return w


def step(params: WfParams, i: int, rng: RngLike) -> int:
    """Draw the next generation's A count: one exact Binomial(N, theta_i) sample."""
    i = _check_count(params, i)
    gen, _ = _coerce_rng(rng)
    th = theta(params, i)
    if th <= 0.0:
        return 0
    if th >= 1.0:
        return params.n_pop
    return int(gen.binomial(params.n_pop, th))


def _is_absorbing(params: WfParams, i: int) -> bool:
    if i == 0:
        return params.mu_small_to_a == 0.0
    if i == params.n_pop:
        return params.mu_a_to_small == 0.0
    return False


def simulate(
    params: WfParams,
    i0: int,
    max_gens: int | None = None,
    rng: RngLike = 0,
    stop_on_absorption: bool = True,
) -> Trajectory:
    """Run the chain forward from count i0.

    Parameters
    ----------
    max_gens : int, optional
        Number of transitions to attempt; defaults to 20 * N, a generous
        multiple of the O(N) neutral absorption time.
    rng : int seed or numpy Generator
        Identical seed and params reproduce the trajectory exactly.
    stop_on_absorption : bool
        Stop at the first visit to a state that is absorbing under the
        given mutation rates (0 with mu2 = 0, N with mu1 = 0) and record
        it in ``absorbed_at``.

    Returns
    -------
    Trajectory of length at most max_gens + 1, starting at i0.
    """
    i0 = _check_count(params, i0, name="i0")
    if max_gens is None:
        max_gens = 20 * params.n_pop
    if max_gens < 1:
        raise ValueError(f"max_gens must be positive, got {max_gens}")
    gen, seed = _coerce_rng(rng)

    counts = [i0]
    absorbed_at = None
    i = i0
    if stop_on_absorption and _is_absorbing(params, i):
        absorbed_at = (0, i)
    else:
        for g in range(1, max_gens + 1):
            i = step(params, i, gen)
            counts.append(i)
            if stop_on_absorption and _is_absorbing(params, i):
                absorbed_at = (g, i)
                break
    return Trajectory(
        counts=np.asarray(counts, dtype=np.int64),
        params=params,
        seed=seed,
        absorbed_at=absorbed_at,
    )
