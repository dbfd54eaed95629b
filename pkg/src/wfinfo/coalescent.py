"""Backward-time view: pairwise coalescence and its information content.

Two present-day individuals share a parent with probability 1/N each
generation, so their coalescence time is geometric with mean N.  Believing
the population has size nu instead of N tilts that geometric law, and the
active information of "coalescence exactly k generations back" measures
the tilt.  On the rescaled clock (one unit = N generations) the wait to go
from i lineages to i-1 is exponential with rate i(i-1)/2, and tail events
admit the same comparison against an exponential with a different mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from wfinfo.active_info import InfoValue, LogBase, _from_nats
from wfinfo.wf_chain import _coerce_rng


@dataclass(frozen=True)
class CoalescentGeomParams:
    """Baseline population size N and alternative size nu.

    nu may be non-integer: it parameterizes the mean of a geometric law,
    not a census, and the rescaled limit needs real-valued nu ~ c N.
    """

    n_true: int
    n_alt: float

    def __post_init__(self):
        if self.n_true < 2:
            raise ValueError(f"n_true must be at least 2, got {self.n_true}")
        if not self.n_alt > 1.0:
            raise ValueError(f"n_alt must exceed 1, got {self.n_alt}")


def geom_coalescence_pmf(n_pop: float, k: int) -> float:
    """Probability the pair first coalesces exactly k generations back."""
    if not n_pop > 1.0:
        raise ValueError(f"n_pop must exceed 1, got {n_pop}")
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be a positive generation count, got {k}")
    return math.exp((k - 1) * math.log1p(-1.0 / n_pop)) / n_pop


def geom_ai(params: CoalescentGeomParams, k: int, base: LogBase = LogBase.NATS) -> InfoValue:
    """Active information of coalescence at generation k when the size is nu, not N.

    Computed in log space from the start; the direct pmf ratio underflows
    once k is large against either population size.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be a positive generation count, got {k}")
    val = (k - 1) * (math.log1p(-1.0 / params.n_alt) - math.log1p(-1.0 / params.n_true))
    val += math.log(params.n_true / params.n_alt)
    return InfoValue(_from_nats(val, base), base)


def geom_ai_limit(c: float, d: float) -> InfoValue:
    """Rescaled limit of geom_ai with k = d N and nu = c N: (1 - 1/c) d - ln c, in nats.

    Linear in d; for c > 1 it is negative at d = 0 and turns positive once
    d exceeds ln(c) / (1 - 1/c).
    """
    if not c > 0.0:
        raise ValueError(f"c must be positive, got {c}")
    if d < 0.0:
        raise ValueError(f"d must be nonnegative, got {d}")
    return InfoValue((1.0 - 1.0 / c) * d - math.log(c), LogBase.NATS)


def _check_lineages(lineages: int) -> int:
    lineages = int(lineages)
    if lineages < 2:
        raise ValueError(f"lineages must be at least 2, got {lineages}")
    return lineages


def kingman_rate(lineages: int) -> float:
    """Coalescence rate i(i-1)/2 from i lineages, in rescaled time."""
    i = _check_lineages(lineages)
    return i * (i - 1) / 2.0


def kingman_tail_ai(lineages: int, mu_alt: float, t: float) -> InfoValue:
    """Active information, in nats, of the wait from i to i-1 lineages exceeding t
    when the wait is exponential with mean mu_alt instead of 2/(i(i-1)).

    Positive iff mu_alt > 2/(i(i-1)).
    """
    i = _check_lineages(lineages)
    if not mu_alt > 0.0:
        raise ValueError(f"mu_alt must be positive, got {mu_alt}")
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return InfoValue(t * (kingman_rate(i) - 1.0 / mu_alt), LogBase.NATS)


def kingman_tail_ai_scaled(lineages: int, c: float, t: float) -> InfoValue:
    """Tail active information for a population scaled by c: (i(i-1) t / 2)(1 - 1/c), nats.

    Matches kingman_tail_ai with mu_alt = 2 c / (i (i-1)).
    """
    i = _check_lineages(lineages)
    if not c > 0.0:
        raise ValueError(f"c must be positive, got {c}")
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return InfoValue(kingman_rate(i) * t * (1.0 - 1.0 / c), LogBase.NATS)


def sample_pairwise_tmrca(n_pop: int, rng, max_gens: int | None = None) -> int | None:
    """Simulate two lineages picking parents uniformly until they collide.

    Returns the first generation (counted back from the present) at which
    both picked the same parent, or None if the run is censored at
    max_gens (default 100 * N).
    """
    n_pop = int(n_pop)
    if n_pop < 2:
        raise ValueError(f"n_pop must be at least 2, got {n_pop}")
    if max_gens is None:
        max_gens = 100 * n_pop
    if max_gens < 1:
        raise ValueError(f"max_gens must be positive, got {max_gens}")
    gen, _ = _coerce_rng(rng)
    for g in range(1, max_gens + 1):
        if gen.integers(n_pop) == gen.integers(n_pop):
            return g
    return None


def pairwise_tmrca_samples(
    n_pop: int,
    n_samples: int,
    seed: int,
    max_gens: int | None = None,
    workers: int = 1,
) -> np.ndarray:
    """Batch of pairwise coalescence times; -1 marks runs censored at max_gens.

    Sample j uses its own substream derived from (seed, j), so the output
    array does not depend on ``workers``.
    """
    from wfinfo import _kernels

    n_pop = int(n_pop)
    if n_pop < 2:
        raise ValueError(f"n_pop must be at least 2, got {n_pop}")
    if n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    if max_gens is None:
        max_gens = 100 * n_pop
    return _kernels.tmrca_samples(seed, n_samples, n_pop, max_gens, workers=workers)
