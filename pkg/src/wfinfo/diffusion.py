"""Diffusion limit of the chain on the frequency scale.

With time measured in units of N generations and alpha = N s, v1 = N mu1,
v2 = N mu2, the A-allele frequency follows
dX_t = mu(X_t) dt + sigma(X_t) dB_t with drift
mu(p) = alpha p (1-p) - v1 p + v2 (1-p) and variance sigma^2(p) = p (1-p).
Closed forms below cover the no-mutation fixation probability, its active
information, the new-mutant case started at frequency 1/N, and the three
standard selection regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from wfinfo.active_info import InfoValue, LogBase, _from_nats
from wfinfo.errors import BoundaryEventError
from wfinfo.wf_chain import WfParams, _coerce_rng

DELETERIOUS = "deleterious"
BENEFICIAL = "beneficial"
NEARLY_NEUTRAL = "nearly_neutral"
UNCLASSIFIED = "unclassified"

# Below this |alpha| the exact ratio of expm1 terms degenerates to 0/0,
# so a two-term series in alpha is used instead.
SERIES_ALPHA = 1e-8


@dataclass(frozen=True)
class DiffusionParams:
    """Rescaled parameters alpha = N s, v1 = N mu1, v2 = N mu2."""

    alpha: float
    v1: float = 0.0
    v2: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha}")
        if not (0.0 <= self.v1 < math.inf and 0.0 <= self.v2 < math.inf):
            raise ValueError(f"mutation intensities must be finite and nonnegative, "
                             f"got v1={self.v1}, v2={self.v2}")

    @classmethod
    def from_wf(cls, params: WfParams) -> "DiffusionParams":
        """Rescale finite-N chain parameters (one unit of time = N generations)."""
        n = params.n_pop
        return cls(alpha=n * params.sel, v1=n * params.mu_a_to_small, v2=n * params.mu_small_to_a)


@dataclass(frozen=True)
class RegimeThresholds:
    """Cutoffs turning the informal |s| << 1 / N|s| >> 1 regimes into tests."""

    weak_sel_max: float = 0.05
    scaled_sel_min: float = 5.0
    nearly_neutral_max: float = 0.1


@dataclass(frozen=True)
class RegimeReport:
    """Classification of (N, s) with exact and approximate fixation values."""

    regime: str
    p_fix_exact_formula: float
    p_fix_approx: float | None
    ai_approx: InfoValue | None


def _check_frequency(p: float, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must be a frequency in [0, 1], got {p}")
    return p


MAX_PATH_STEPS = 10**8


def _check_step_count(dt: float, t_max: float) -> int:
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be a finite positive value, got {dt}")
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise ValueError(f"t_max must be a finite positive value, got {t_max}")
    n_steps = int(t_max / dt)
    if n_steps > MAX_PATH_STEPS:
        raise ValueError(
            f"t_max/dt asks for {n_steps} steps, above the cap of {MAX_PATH_STEPS}; "
            "increase dt or decrease t_max"
        )
    return n_steps


def drift(dp: DiffusionParams, p: float) -> float:
    """Infinitesimal drift alpha p(1-p) - v1 p + v2 (1-p)."""
    p = _check_frequency(p)
    return dp.alpha * p * (1.0 - p) - dp.v1 * p + dp.v2 * (1.0 - p)


def variance(p: float) -> float:
    """Infinitesimal variance p(1-p); vanishes at the boundaries."""
    p = _check_frequency(p)
    return p * (1.0 - p)


def pfix_diffusion(alpha: float, p0: float) -> float:
    """Probability that A eventually fixes from initial frequency p0 (no mutation).

    (1 - exp(-2 alpha p0)) / (1 - exp(-2 alpha)) for alpha != 0 and p0 at
    alpha = 0, evaluated with expm1 throughout; a two-term series covers
    |alpha| < 1e-8 where the ratio degenerates.
    """
    p0 = _check_frequency(p0, name="p0")
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    if abs(alpha) < SERIES_ALPHA:
        return p0 + alpha * p0 * (1.0 - p0)
    if alpha > 0.0:
        return math.expm1(-2.0 * alpha * p0) / math.expm1(-2.0 * alpha)
    # alpha < 0: factor out the growing exponential to stay finite
    a = -2.0 * alpha
    return math.exp(a * (p0 - 1.0)) * math.expm1(-a * p0) / math.expm1(-a)


def pfix_ai(alpha: float, p0: float, base: LogBase = LogBase.NATS) -> InfoValue:
    """Active information of eventual fixation versus the neutral probability p0."""
    p0 = _check_frequency(p0, name="p0")
    if p0 == 0.0 or p0 == 1.0:
        raise BoundaryEventError(f"p0={p0} is a boundary frequency; fixation there is degenerate")
    val = math.log(pfix_diffusion(alpha, p0)) - math.log(p0)
    return InfoValue(_from_nats(val, base), base)


def new_mutant_pfix(n_pop: int, sel: float) -> float:
    """Fixation probability of a single new mutant, (1 - e^(-2s)) / (1 - e^(-2Ns)).

    At s = 0 this is the neutral limit 1/N.
    """
    if n_pop < 2:
        raise ValueError(f"n_pop must be at least 2, got {n_pop}")
    return pfix_diffusion(n_pop * sel, 1.0 / n_pop)


def regime_report(
    n_pop: int,
    sel: float,
    base: LogBase = LogBase.NATS,
    thresholds: RegimeThresholds = RegimeThresholds(),
) -> RegimeReport:
    """Classify (N, s) and report exact and regime-approximate new-mutant values.

    Deleterious (s < 0, |s| small, N|s| large): p_fix ~ 2|s| e^(-2N|s|),
    active information -2N|s| + ln(2N|s|) nats.  Beneficial (s > 0, s
    small, Ns large): p_fix ~ 2s, active information ln(2Ns) nats.  Nearly
    neutral (N|s| tiny): p_fix ~ 1/N, active information ~ 0.  Anything
    else is reported unclassified with the approximations omitted.
    """
    if n_pop < 2:
        raise ValueError(f"n_pop must be at least 2, got {n_pop}")
    exact = new_mutant_pfix(n_pop, sel)
    scaled = n_pop * abs(sel)
    if scaled <= thresholds.nearly_neutral_max:
        return RegimeReport(
            regime=NEARLY_NEUTRAL,
            p_fix_exact_formula=exact,
            p_fix_approx=1.0 / n_pop,
            ai_approx=InfoValue(_from_nats(0.0, base), base),
        )
    if abs(sel) <= thresholds.weak_sel_max and scaled >= thresholds.scaled_sel_min:
        if sel < 0.0:
            ai_nats = -2.0 * scaled + math.log(2.0 * scaled)
            return RegimeReport(
                regime=DELETERIOUS,
                p_fix_exact_formula=exact,
                p_fix_approx=2.0 * abs(sel) * math.exp(-2.0 * scaled),
                ai_approx=InfoValue(_from_nats(ai_nats, base), base),
            )
        return RegimeReport(
            regime=BENEFICIAL,
            p_fix_exact_formula=exact,
            p_fix_approx=2.0 * sel,
            ai_approx=InfoValue(_from_nats(math.log(2.0 * scaled), base), base),
        )
    return RegimeReport(
        regime=UNCLASSIFIED,
        p_fix_exact_formula=exact,
        p_fix_approx=None,
        ai_approx=None,
    )


def sde_simulate(
    dp: DiffusionParams,
    p0: float,
    dt: float,
    t_max: float,
    rng,
) -> np.ndarray:
    """Euler-Maruyama path of the frequency diffusion on the grid 0, dt, .., t_max.

    Each step adds drift * dt + sqrt(variance * dt) * Z and the state is
    clamped to [0, 1].  A boundary with zero inbound mutation intensity
    absorbs: the remainder of the path stays there.  Returns the array of
    frequencies including the initial value (length floor(t_max/dt) + 1).
    """
    p0 = _check_frequency(p0, name="p0")
    n_steps = _check_step_count(dt, t_max)
    gen, _ = _coerce_rng(rng)
    path = np.empty(n_steps + 1)
    path[0] = p0
    p = p0
    sqdt = math.sqrt(dt)
    for k in range(1, n_steps + 1):
        if (p == 0.0 and dp.v2 == 0.0) or (p == 1.0 and dp.v1 == 0.0):
            path[k:] = p
            break
        mu = dp.alpha * p * (1.0 - p) - dp.v1 * p + dp.v2 * (1.0 - p)
        sigma = math.sqrt(p * (1.0 - p))
        p = p + mu * dt + sigma * sqdt * gen.standard_normal()
        p = min(max(p, 0.0), 1.0)
        path[k] = p
    return path


def sde_absorption_counts(
    dp: DiffusionParams,
    p0: float,
    dt: float,
    t_max: float,
    n_paths: int,
    seed: int,
    workers: int = 1,
) -> tuple[int, int, int]:
    """Absorption tallies over an ensemble of Euler-Maruyama paths.

    Returns (absorbed at 1, absorbed at 0, still interior at t_max).  Each
    path uses its own substream derived from (seed, path index), so the
    tallies do not depend on ``workers``.
    """
    from wfinfo import _kernels

    p0 = _check_frequency(p0, name="p0")
    _check_step_count(dt, t_max)
    if n_paths < 1:
        raise ValueError(f"n_paths must be positive, got {n_paths}")
    return _kernels.sde_absorption_counts(
        seed, n_paths, dp.alpha, dp.v1, dp.v2, p0, dt, t_max, workers=workers
    )
