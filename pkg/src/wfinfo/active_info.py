"""Information accounting for chain events.

The endogenous information of an event is -log of its probability under
the drift-only (neutral) chain; the exogenous information is -log of its
probability once selection and mutation are switched on.  Their
difference, the active information, is the log probability ratio
log(p_alt / p_null): positive when the non-neutral model makes the event
more likely, negative when it makes it less likely.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from wfinfo.errors import BoundaryEventError, UndefinedEventError, UnsupportedParametersError
from wfinfo.wf_chain import WfParams, _check_count, theta

LN2 = math.log(2.0)


class LogBase(enum.Enum):
    """Logarithm base for information values: bits (log2) or nats (ln)."""

    BITS = "bits"
    NATS = "nats"


def _from_nats(value: float, base: LogBase) -> float:
    return value if base is LogBase.NATS else value / LN2


@dataclass(frozen=True)
class InfoValue:
    """An information quantity together with its log base.

    ``value`` may be +inf or -inf (events impossible under one of the two
    models) but never NaN.
    """

    value: float
    base: LogBase = LogBase.NATS

    def __post_init__(self):
        if math.isnan(self.value):
            raise ValueError("information value must not be NaN")

    def to(self, base: LogBase) -> "InfoValue":
        if base is self.base:
            return self
        if base is LogBase.NATS:
            return InfoValue(self.value * LN2, base)
        return InfoValue(self.value / LN2, base)

    @property
    def nats(self) -> float:
        return self.to(LogBase.NATS).value

    @property
    def bits(self) -> float:
        return self.to(LogBase.BITS).value


@dataclass(frozen=True)
class InfoBreakdown:
    """Endogenous, exogenous and active information of one event."""

    endogenous: InfoValue
    exogenous: InfoValue
    active: InfoValue


def active_info_from_probs(p_null: float, p_alt: float, base: LogBase = LogBase.NATS) -> InfoBreakdown:
    """Information breakdown of an event from its two probabilities.

    ``p_null`` is the event probability under the baseline model and
    ``p_alt`` under the alternative.  Zero probabilities yield signed
    infinities: p_null = 0 < p_alt gives active +inf, p_alt = 0 < p_null
    gives active -inf.  Both zero is rejected as an undefined event.
    """
    for name, p in (("p_null", p_null), ("p_alt", p_alt)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must be a probability in [0, 1], got {p}")
    if p_null == 0.0 and p_alt == 0.0:
        raise UndefinedEventError("event has probability zero under both models")
    log_null = math.log(p_null) if p_null > 0.0 else -math.inf
    log_alt = math.log(p_alt) if p_alt > 0.0 else -math.inf
    endo = -log_null
    exo = -log_alt
    if p_null == 0.0:
        active = math.inf
    elif p_alt == 0.0:
        active = -math.inf
    else:
        active = log_alt - log_null
    return InfoBreakdown(
        endogenous=InfoValue(_from_nats(endo, base), base),
        exogenous=InfoValue(_from_nats(exo, base), base),
        active=InfoValue(_from_nats(active, base), base),
    )


def _check_interior(params: WfParams, i: int) -> int:
    i = _check_count(params, i)
    if i == 0 or i == params.n_pop:
        raise BoundaryEventError(
            f"i={i} is a boundary state; use active_info_from_probs for degenerate events"
        )
    return i


def single_draw_ai(params: WfParams, i: int, base: LogBase = LogBase.NATS) -> InfoValue:
    """Active information of one child drawing an A parent.

    The baseline success probability is i/N; the alternative is theta_i.
    With no mutation this equals log((N + N s)/(N + i s)).
    """
    i = _check_interior(params, i)
    return active_info_from_probs(i / params.n_pop, theta(params, i), base).active


def offspring_event_ai(params: WfParams, i: int, j: int, base: LogBase = LogBase.NATS) -> InfoValue:
    """Active information of seeing exactly j copies of A in the next generation.

    Equals the log ratio of the two binomial pmfs at j; the binomial
    coefficients cancel, leaving
    j log(theta_i / (i/N)) + (N - j) log((1 - theta_i) / (1 - i/N)).
    A theta of exactly 0 or 1 with an incompatible j gives -inf.
    """
    i = _check_interior(params, i)
    j = _check_count(params, j, name="j")
    n = params.n_pop
    th = theta(params, i)
    p_null = i / n
    val = 0.0
    if j > 0:
        if th == 0.0:
            return InfoValue(_from_nats(-math.inf, base), base)
        val += j * (math.log(th) - math.log(p_null))
    if j < n:
        if th == 1.0:
            return InfoValue(_from_nats(-math.inf, base), base)
        val += (n - j) * (math.log1p(-th) - math.log1p(-p_null))
    return InfoValue(_from_nats(val, base), base)


def one_step_fixation_ai(params: WfParams, i: int, base: LogBase = LogBase.NATS) -> InfoValue:
    """Active information of A fixing in a single generation (j = N), no mutation.

    Closed form N log((N + N s)/(N + i s)); exactly N times the
    single-draw active information.
    """
    if params.has_mutation:
        raise UnsupportedParametersError(
            "one-step fixation closed form requires mu_a_to_small = mu_small_to_a = 0"
        )
    i = _check_interior(params, i)
    n, s = params.n_pop, params.sel
    val = n * (math.log(n + n * s) - math.log(n + i * s))
    return InfoValue(_from_nats(val, base), base)
