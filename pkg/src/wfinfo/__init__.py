"""Wright-Fisher chain, diffusion-limit and coalescent calculations with
active-information measures."""

from wfinfo.active_info import (
    InfoBreakdown,
    InfoValue,
    LogBase,
    active_info_from_probs,
    offspring_event_ai,
    one_step_fixation_ai,
    single_draw_ai,
)
from wfinfo.coalescent import (
    CoalescentGeomParams,
    geom_ai,
    geom_ai_limit,
    geom_coalescence_pmf,
    kingman_rate,
    kingman_tail_ai,
    kingman_tail_ai_scaled,
    pairwise_tmrca_samples,
    sample_pairwise_tmrca,
)
from wfinfo.diffusion import (
    DiffusionParams,
    RegimeReport,
    RegimeThresholds,
    drift,
    new_mutant_pfix,
    pfix_ai,
    pfix_diffusion,
    regime_report,
    sde_absorption_counts,
    sde_simulate,
    variance,
)
from wfinfo.errors import (
    BoundaryEventError,
    CapacityError,
    UndefinedEventError,
    UnsupportedParametersError,
)
from wfinfo.fixation import (
    FixationResult,
    exact_fixation_curve,
    exact_fixation_prob,
    fixation_ai,
    mc_fixation_prob,
)
from wfinfo.wf_chain import (
    Trajectory,
    WfParams,
    maxent_initial,
    selection_sampling_probs,
    simulate,
    step,
    theta,
    transition_matrix,
    transition_prob,
    transition_row,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryEventError",
    "CapacityError",
    "CoalescentGeomParams",
    "DiffusionParams",
    "FixationResult",
    "InfoBreakdown",
    "InfoValue",
    "LogBase",
    "RegimeReport",
    "RegimeThresholds",
    "Trajectory",
    "UndefinedEventError",
    "UnsupportedParametersError",
    "WfParams",
    "active_info_from_probs",
    "drift",
    "exact_fixation_curve",
    "exact_fixation_prob",
    "fixation_ai",
    "geom_ai",
    "geom_ai_limit",
    "geom_coalescence_pmf",
    "kingman_rate",
    "kingman_tail_ai",
    "kingman_tail_ai_scaled",
    "maxent_initial",
    "mc_fixation_prob",
    "new_mutant_pfix",
    "offspring_event_ai",
    "one_step_fixation_ai",
    "pairwise_tmrca_samples",
    "pfix_ai",
    "pfix_diffusion",
    "regime_report",
    "sample_pairwise_tmrca",
    "sde_absorption_counts",
    "sde_simulate",
    "selection_sampling_probs",
    "simulate",
    "single_draw_ai",
    "step",
    "theta",
    "transition_matrix",
    "transition_prob",
    "transition_row",
    "variance",
    "__version__",
]
