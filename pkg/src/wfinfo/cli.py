"""Command-line front-end.

Every computation is exposed as a subcommand that emits one or more flat
records, either as newline-delimited JSON (numbers printed with 17
significant digits) or RFC-4180 CSV with a header row (12 significant
digits).  Identical arguments and seed produce byte-identical output, and
Monte Carlo subcommands give the same records for any --workers setting.

Information columns carry a _nats or _bits suffix naming their log base.
The initial law used by the forward model places no weight on the
boundary counts 0 and N: it is uniform over {1, .., N-1}, the
maximum-entropy choice when both alleles are known to be present.
Diffusion subcommands measure time in units of N generations (alpha =
N*s, v1 = N*mu1, v2 = N*mu2).
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys

import numpy as np

from wfinfo import __version__
from wfinfo.active_info import (
    LogBase,
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
)
from wfinfo.diffusion import (
    DiffusionParams,
    new_mutant_pfix,
    pfix_ai,
    pfix_diffusion,
    regime_report,
    sde_simulate,
)
from wfinfo.fixation import (
    EXACT_SOLVE,
    MONTE_CARLO,
    exact_fixation_prob,
    fixation_ai,
    mc_fixation_prob,
)
from wfinfo.wf_chain import (
    WfParams,
    maxent_initial,
    selection_sampling_probs,
    simulate,
    theta,
    transition_prob,
)

SWEEP_CAP = 10**6
REQUIRED = object()


# ----------------------------------------------------------------------
# Record serialization
# ----------------------------------------------------------------------

def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
        if math.isnan(x):
            return "NaN"
        if x == 0.0:
            x = 0.0  # fold -0.0 into 0
        return format(x, ".17g")
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v).__name__} in a record")


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if x == 0.0:
            x = 0.0  # fold -0.0 into 0
        return format(x, ".12g")
    return str(v)


def _write_records(records, fmt: str, stream) -> None:
    if fmt == "json":
        for record in records:
            body = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in record.items())
            stream.write("{" + body + "}\n")
    else:
        writer = None
        header = None
        for record in records:
            if writer is None:
                writer = csv.writer(stream, lineterminator="\n")
                header = list(record.keys())
                writer.writerow(header)
            writer.writerow([_csv_value(record[k]) for k in header])


def _info_key(prefix: str, base: LogBase) -> str:
    return f"{prefix}_{base.value}"


# ----------------------------------------------------------------------
# Argument types
# ----------------------------------------------------------------------

def _uint64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _base_arg(args) -> LogBase:
    return LogBase(args.base)


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="json", help="output format (default json)")
    p.add_argument("--output", default=None, metavar="PATH", help="write records to PATH instead of stdout")


def _add_base_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--base", choices=("bits", "nats"), default="nats", help="log base for information values")


def _add_wf_args(p: argparse.ArgumentParser, mutation: bool = True) -> None:
    p.add_argument("--N", type=int, required=True, help="population size (>= 2)")
    p.add_argument("--s", type=float, default=0.0, help="selection coefficient (> -1)")
    if mutation:
        p.add_argument("--mu1", type=float, default=0.0, help="mutation probability A -> a")
        p.add_argument("--mu2", type=float, default=0.0, help="mutation probability a -> A")


# ----------------------------------------------------------------------
# Subcommand handlers (each returns an iterable of records)
# ----------------------------------------------------------------------

def _cmd_simulate(args):
    params = WfParams(args.N, args.s, args.mu1, args.mu2)
    traj = simulate(
        params,
        args.i,
        max_gens=args.max_gens,
        rng=args.seed,
        stop_on_absorption=args.stop_on_absorption,
    )
    max_gens = args.max_gens if args.max_gens is not None else 20 * args.N
    records = []
    for g, count in enumerate(traj.counts):
        absorbed_here = traj.absorbed_at is not None and traj.absorbed_at[0] == g
        records.append({
            "command": "simulate",
            "N": args.N, "s": args.s, "mu1": args.mu1, "mu2": args.mu2,
            "i": args.i, "seed": args.seed, "max_gens": max_gens,
            "stop_on_absorption": args.stop_on_absorption,
            "generation": g, "count": int(count),
            "absorbed_state": traj.absorbed_at[1] if absorbed_here else None,
            "tool_version": __version__,
        })
    return records


def _cmd_actinfo_single_draw(args):
    params = WfParams(args.N, args.s, args.mu1, args.mu2)
    base = _base_arg(args)
    value = single_draw_ai(params, args.i, base)
    return [{
        "command": "actinfo.single-draw",
        "N": args.N, "i": args.i, "s": args.s, "mu1": args.mu1, "mu2": args.mu2,
        "base": base.value,
        _info_key("active_info", base): value.value,
        "tool_version": __version__,
    }]


def _cmd_actinfo_offspring_event(args):
    params = WfParams(args.N, args.s, args.mu1, args.mu2)
    base = _base_arg(args)
    value = offspring_event_ai(params, args.i, args.j, base)
    return [{
        "command": "actinfo.offspring-event",
        "N": args.N, "i": args.i, "j": args.j, "s": args.s, "mu1": args.mu1, "mu2": args.mu2,
        "base": base.value,
        _info_key("active_info", base): value.value,
        "tool_version": __version__,
    }]


def _cmd_actinfo_one_step_fixation(args):
    params = WfParams(args.N, args.s)
    base = _base_arg(args)
    value = one_step_fixation_ai(params, args.i, base)
    return [{
        "command": "actinfo.one-step-fixation",
        "N": args.N, "i": args.i, "s": args.s,
        "base": base.value,
        _info_key("active_info", base): value.value,
        "tool_version": __version__,
    }]


def _cmd_fixation_exact(args):
    params = WfParams(args.N, args.s)
    result = exact_fixation_prob(params, args.i)
    return [{
        "command": "fixation.exact",
        "N": args.N, "i": args.i, "s": args.s,
        "method": result.method, "p_fix": result.p_fix,
        "tool_version": __version__,
    }]


def _cmd_fixation_mc(args):
    params = WfParams(args.N, args.s, args.mu1, args.mu2)
    result = mc_fixation_prob(
        params, args.i, args.trials, args.seed,
        max_gens=args.max_gens, workers=args.workers,
    )
    # the worker count is an execution detail, not a model input: records
    # must be byte-identical for any parallelism setting, so it is not echoed
    return [{
        "command": "fixation.mc",
        "N": args.N, "i": args.i, "s": args.s, "mu1": args.mu1, "mu2": args.mu2,
        "trials": args.trials,
        "max_gens": args.max_gens if args.max_gens is not None else 50 * args.N,
        "seed": args.seed,
        "method": result.method, "p_fix": result.p_fix,
        "ci_halfwidth_95": result.ci_halfwidth, "censored": result.censored,
        "tool_version": __version__,
    }]


def _cmd_fixation_ai(args):
    params = WfParams(args.N, args.s, args.mu1, args.mu2)
    base = _base_arg(args)
    method = EXACT_SOLVE if args.method == "exact" else MONTE_CARLO
    if method == MONTE_CARLO and args.seed is None:
        raise ValueError("--seed is required when --method mc is selected")
    breakdown = fixation_ai(
        params, args.i, base, method=method,
        trials=args.trials, seed=args.seed if args.seed is not None else 0,
        max_gens=args.max_gens, workers=args.workers,
    )
    return [{
        "command": "fixation.ai",
        "N": args.N, "i": args.i, "s": args.s, "mu1": args.mu1, "mu2": args.mu2,
        "method": method, "base": base.value,
        "trials": args.trials if method == MONTE_CARLO else None,
        "seed": args.seed if method == MONTE_CARLO else None,
        _info_key("endogenous_info", base): breakdown.endogenous.value,
        _info_key("exogenous_info", base): breakdown.exogenous.value,
        _info_key("active_info", base): breakdown.active.value,
        "tool_version": __version__,
    }]


def _cmd_diffusion_pfix(args):
    return [{
        "command": "diffusion.pfix",
        "alpha": args.alpha, "p0": args.p0,
        "p_fix": pfix_diffusion(args.alpha, args.p0),
        "tool_version": __version__,
    }]


def _cmd_diffusion_pfix_ai(args):
    base = _base_arg(args)
    value = pfix_ai(args.alpha, args.p0, base)
    return [{
        "command": "diffusion.pfix-ai",
        "alpha": args.alpha, "p0": args.p0, "base": base.value,
        _info_key("active_info", base): value.value,
        "tool_version": __version__,
    }]


def _cmd_diffusion_new_mutant(args):
    return [{
        "command": "diffusion.new-mutant",
        "N": args.N, "s": args.s,
        "p_fix": new_mutant_pfix(args.N, args.s),
        "tool_version": __version__,
    }]


def _cmd_diffusion_regime(args):
    base = _base_arg(args)
    report = regime_report(args.N, args.s, base)
    return [{
        "command": "diffusion.regime",
        "N": args.N, "s": args.s, "base": base.value,
        "regime": report.regime,
        "p_fix_exact_formula": report.p_fix_exact_formula,
        "p_fix_approx": report.p_fix_approx,
        _info_key("ai_approx", base): report.ai_approx.value if report.ai_approx else None,
        "tool_version": __version__,
    }]


def _cmd_diffusion_sde(args):
    dp = DiffusionParams(args.alpha, args.v1, args.v2)
    path = sde_simulate(dp, args.p0, args.dt, args.t_max, args.seed)
    records = []
    for k, p in enumerate(path):
        records.append({
            "command": "diffusion.sde",
            "alpha": args.alpha, "v1": args.v1, "v2": args.v2,
            "p0": args.p0, "dt": args.dt, "t_max": args.t_max, "seed": args.seed,
            "step": k, "time": k * args.dt, "p": float(p),
            "tool_version": __version__,
        })
    return records


def _cmd_coalescent_geom_pmf(args):
    return [{
        "command": "coalescent.geom-pmf",
        "N": args.N, "k": args.k,
        "pmf": geom_coalescence_pmf(args.N, args.k),
        "tool_version": __version__,
    }]


def _cmd_coalescent_geom_ai(args):
    base = _base_arg(args)
    value = geom_ai(CoalescentGeomParams(args.N, args.nu), args.k, base)
    return [{
        "command": "coalescent.geom-ai",
        "N": args.N, "nu": args.nu, "k": args.k, "base": base.value,
        _info_key("active_info", base): value.value,
        "tool_version": __version__,
    }]


def _cmd_coalescent_geom_ai_limit(args):
    value = geom_ai_limit(args.c, args.d)
    return [{
        "command": "coalescent.geom-ai-limit",
        "c": args.c, "d": args.d,
        "active_info_nats": value.value,
        "tool_version": __version__,
    }]


def _cmd_coalescent_kingman_rate(args):
    return [{
        "command": "coalescent.kingman-rate",
        "lineages": args.lineages,
        "rate": kingman_rate(args.lineages),
        "tool_version": __version__,
    }]


def _cmd_coalescent_kingman_tail_ai(args):
    value = kingman_tail_ai(args.lineages, args.mu_alt, args.t)
    return [{
        "command": "coalescent.kingman-tail-ai",
        "lineages": args.lineages, "mu_alt": args.mu_alt, "t": args.t,
        "active_info_nats": value.value,
        "tool_version": __version__,
    }]


def _cmd_coalescent_kingman_tail_ai_scaled(args):
    value = kingman_tail_ai_scaled(args.lineages, args.c, args.t)
    return [{
        "command": "coalescent.kingman-tail-ai-scaled",
        "lineages": args.lineages, "c": args.c, "t": args.t,
        "active_info_nats": value.value,
        "tool_version": __version__,
    }]


def _cmd_coalescent_tmrca(args):
    max_gens = args.max_gens if args.max_gens is not None else 100 * args.N
    samples = pairwise_tmrca_samples(
        args.N, args.trials, args.seed, max_gens=max_gens, workers=args.workers
    )
    records = []
    for idx, k in enumerate(samples):
        censored = k < 0
        records.append({
            "command": "coalescent.tmrca",
            "N": args.N, "trials": args.trials, "max_gens": max_gens,
            "seed": args.seed,
            "sample": idx,
            "k": None if censored else int(k),
            "censored": bool(censored),
            "tool_version": __version__,
        })
    return records


# ----------------------------------------------------------------------
# Parameter sweeps
# ----------------------------------------------------------------------

def _sweep_theta(v):
    return {"theta": theta(WfParams(v["N"], v["s"], v["mu1"], v["mu2"]), v["i"])}


def _sweep_selection_sampling(v):
    p_a, p_small = selection_sampling_probs(WfParams(v["N"], v["s"]), v["i"])
    return {"p_sample_a_allele": p_a, "p_sample_small_a": p_small}


def _sweep_transition_prob(v):
    params = WfParams(v["N"], v["s"], v["mu1"], v["mu2"])
    return {"prob": transition_prob(params, v["i"], v["j"])}


def _sweep_maxent_initial(v):
    weights = maxent_initial(v["N"])
    i = v["i"]
    if not 0 <= i <= v["N"]:
        raise ValueError(f"i={i} outside the state space 0..{v['N']}")
    return {"weight": float(weights[i])}


def _sweep_single_draw_ai(v):
    value = single_draw_ai(WfParams(v["N"], v["s"], v["mu1"], v["mu2"]), v["i"], v["base"])
    return {_info_key("active_info", v["base"]): value.value}


def _sweep_offspring_event_ai(v):
    value = offspring_event_ai(WfParams(v["N"], v["s"], v["mu1"], v["mu2"]), v["i"], v["j"], v["base"])
    return {_info_key("active_info", v["base"]): value.value}


def _sweep_one_step_fixation_ai(v):
    value = one_step_fixation_ai(WfParams(v["N"], v["s"]), v["i"], v["base"])
    return {_info_key("active_info", v["base"]): value.value}


def _sweep_fixation_exact(v):
    return {"p_fix": exact_fixation_prob(WfParams(v["N"], v["s"]), v["i"]).p_fix}


def _sweep_fixation_ai(v):
    breakdown = fixation_ai(WfParams(v["N"], v["s"]), v["i"], v["base"])
    return {
        _info_key("endogenous_info", v["base"]): breakdown.endogenous.value,
        _info_key("exogenous_info", v["base"]): breakdown.exogenous.value,
        _info_key("active_info", v["base"]): breakdown.active.value,
    }


def _sweep_pfix_diffusion(v):
    return {"p_fix": pfix_diffusion(v["alpha"], v["p0"])}


def _sweep_pfix_ai(v):
    return {_info_key("active_info", v["base"]): pfix_ai(v["alpha"], v["p0"], v["base"]).value}


def _sweep_new_mutant_pfix(v):
    return {"p_fix": new_mutant_pfix(v["N"], v["s"])}


def _sweep_geom_pmf(v):
    return {"pmf": geom_coalescence_pmf(v["N"], v["k"])}


def _sweep_geom_ai(v):
    value = geom_ai(CoalescentGeomParams(v["N"], v["nu"]), v["k"], v["base"])
    return {_info_key("active_info", v["base"]): value.value}


def _sweep_geom_ai_limit(v):
    return {"active_info_nats": geom_ai_limit(v["c"], v["d"]).value}


def _sweep_kingman_rate(v):
    return {"rate": kingman_rate(v["lineages"])}


def _sweep_kingman_tail_ai(v):
    return {"active_info_nats": kingman_tail_ai(v["lineages"], v["mu_alt"], v["t"]).value}


def _sweep_kingman_tail_ai_scaled(v):
    return {"active_info_nats": kingman_tail_ai_scaled(v["lineages"], v["c"], v["t"]).value}


def _sweep_chain_vs_diffusion(v):
    n, alpha, p0 = v["N"], v["alpha"], v["p0"]
    i = math.ceil(p0 * n - 1e-9)
    chain = exact_fixation_prob(WfParams(n, alpha / n), i).p_fix
    diff = pfix_diffusion(alpha, p0)
    return {"i": i, "p_fix_chain": chain, "p_fix_diffusion": diff, "abs_gap": abs(chain - diff)}


# (name, type, default) per parameter; REQUIRED marks mandatory ones.
SWEEP_TARGETS = {
    "theta": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("s", float, 0.0),
               ("mu1", float, 0.0), ("mu2", float, 0.0)], _sweep_theta),
    "selection-sampling": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("s", float, 0.0)],
                           _sweep_selection_sampling),
    "transition-prob": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("j", int, REQUIRED),
                         ("s", float, 0.0), ("mu1", float, 0.0), ("mu2", float, 0.0)],
                        _sweep_transition_prob),
    "maxent-initial": ([("N", int, REQUIRED), ("i", int, REQUIRED)], _sweep_maxent_initial),
    "single-draw-ai": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("s", float, 0.0),
                        ("mu1", float, 0.0), ("mu2", float, 0.0), ("base", "base", LogBase.NATS)],
                       _sweep_single_draw_ai),
    "offspring-event-ai": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("j", int, REQUIRED),
                            ("s", float, 0.0), ("mu1", float, 0.0), ("mu2", float, 0.0),
                            ("base", "base", LogBase.NATS)], _sweep_offspring_event_ai),
    "one-step-fixation-ai": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("s", float, 0.0),
                              ("base", "base", LogBase.NATS)], _sweep_one_step_fixation_ai),
    "fixation-exact": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("s", float, 0.0)],
                       _sweep_fixation_exact),
    "fixation-ai": ([("N", int, REQUIRED), ("i", int, REQUIRED), ("s", float, 0.0),
                     ("base", "base", LogBase.NATS)], _sweep_fixation_ai),
    "pfix-diffusion": ([("alpha", float, REQUIRED), ("p0", float, REQUIRED)], _sweep_pfix_diffusion),
    "pfix-ai": ([("alpha", float, REQUIRED), ("p0", float, REQUIRED), ("base", "base", LogBase.NATS)],
                _sweep_pfix_ai),
    "new-mutant-pfix": ([("N", int, REQUIRED), ("s", float, REQUIRED)], _sweep_new_mutant_pfix),
    "geom-pmf": ([("N", float, REQUIRED), ("k", int, REQUIRED)], _sweep_geom_pmf),
    "geom-ai": ([("N", int, REQUIRED), ("nu", float, REQUIRED), ("k", int, REQUIRED),
                 ("base", "base", LogBase.NATS)], _sweep_geom_ai),
    "geom-ai-limit": ([("c", float, REQUIRED), ("d", float, REQUIRED)], _sweep_geom_ai_limit),
    "kingman-rate": ([("lineages", int, REQUIRED)], _sweep_kingman_rate),
    "kingman-tail-ai": ([("lineages", int, REQUIRED), ("mu_alt", float, REQUIRED),
                         ("t", float, REQUIRED)], _sweep_kingman_tail_ai),
    "kingman-tail-ai-scaled": ([("lineages", int, REQUIRED), ("c", float, REQUIRED),
                                ("t", float, REQUIRED)], _sweep_kingman_tail_ai_scaled),
    "chain-vs-diffusion": ([("N", int, REQUIRED), ("alpha", float, REQUIRED),
                            ("p0", float, REQUIRED)], _sweep_chain_vs_diffusion),
}


def _convert_value(text: str, kind, name: str):
    try:
        if kind is int:
            return int(text)
        if kind is float:
            return float(text)
        if kind == "base":
            return LogBase(text)
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a value for {name}") from None
    raise ValueError(f"unknown parameter kind for {name}")


def _parse_axis(name: str, text: str, kind) -> list:
    """Axis values from 'v1,v2,..' or 'start:stop:step' (endpoints inclusive)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range for {name} must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"range step for {name} must be positive, got {step}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise ValueError(f"range for {name} is empty: {text!r}")
        if count > SWEEP_CAP:
            raise ValueError(f"axis {name} has {count} points, above the cap of {SWEEP_CAP}")
        values = [start + k * step for k in range(count)]
        if kind is int:
            return [int(round(v)) for v in values]
        return values
    return [_convert_value(item, kind, name) for item in text.split(",") if item != ""]


def _cmd_sweep(args):
    schema, fn = SWEEP_TARGETS[args.target]
    names = [name for name, _, _ in schema]
    kinds = dict((name, kind) for name, kind, _ in schema)

    axes: list[tuple[str, list]] = []
    for vary in args.vary or []:
        if "=" not in vary:
            raise ValueError(f"--vary expects NAME=VALUES, got {vary!r}")
        name, text = vary.split("=", 1)
        if name not in kinds:
            raise ValueError(f"target {args.target!r} has no parameter {name!r}; "
                             f"available: {', '.join(names)}")
        if name == "base":
            raise ValueError("base cannot be swept; it would change the output columns")
        if any(name == existing for existing, _ in axes):
            raise ValueError(f"parameter {name!r} given as an axis twice")
        axes.append((name, _parse_axis(name, text, kinds[name])))
    if not axes:
        raise ValueError("at least one --vary axis is required")

    fixed = {}
    axis_names = [a for a, _ in axes]
    for name, kind, default in schema:
        supplied = getattr(args, name)
        if name in axis_names:
            if supplied is not None:
                raise ValueError(f"parameter {name!r} is both fixed and an axis")
            continue
        if supplied is not None:
            fixed[name] = _convert_value(supplied, kind, name) if isinstance(supplied, str) else supplied
        elif default is REQUIRED:
            raise ValueError(f"target {args.target!r} requires --{name.replace('_', '-')} or a --vary axis for it")
        else:
            fixed[name] = default

    total = 1
    for _, values in axes:
        total *= len(values)
    if total > SWEEP_CAP:
        raise ValueError(f"sweep has {total} points, above the cap of {SWEEP_CAP}")

    def generate():
        for combo in itertools.product(*(values for _, values in axes)):
            point = dict(fixed)
            point.update(zip(axis_names, combo))
            outputs = fn(point)
            record = {"command": f"sweep.{args.target}"}
            for name in names:
                value = point[name]
                record[name] = value.value if isinstance(value, LogBase) else value
            record.update(outputs)
            record["tool_version"] = __version__
            yield record

    return generate()


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfinfo",
        description="Wright-Fisher chain, diffusion and coalescent calculations "
                    "with active-information measures.",
        epilog="Conventions: the maximum-entropy initial law is uniform over the "
               "interior counts {1, .., N-1} and places no weight on 0 or N (both "
               "alleles are assumed present at time 0; see the maxent-initial sweep "
               "target). Diffusion subcommands measure time in units of N "
               "generations, with alpha = N*s, v1 = N*mu1 and v2 = N*mu2. "
               "Information columns carry a _nats or _bits suffix naming their log "
               "base; the default base is nats.",
    )
    parser.add_argument("--version", action="version", version=f"wfinfo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="forward trajectory of the allele-count chain")
    _add_wf_args(p)
    p.add_argument("--i", type=int, required=True, help="initial count of A alleles")
    p.add_argument("--max-gens", type=_positive_int, default=None, help="generation cap (default 20*N)")
    p.add_argument("--seed", type=_uint64, required=True, help="RNG seed")
    p.add_argument("--stop-on-absorption", action=argparse.BooleanOptionalAction, default=True,
                   help="stop at the first absorbing state")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_simulate)

    actinfo = sub.add_parser("actinfo", help="active information of chain events")
    actsub = actinfo.add_subparsers(dest="subcommand", required=True)

    p = actsub.add_parser("single-draw", help="one child drawing an A parent")
    _add_wf_args(p)
    p.add_argument("--i", type=int, required=True)
    _add_base_arg(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_actinfo_single_draw)

    p = actsub.add_parser("offspring-event", help="exactly j copies of A in the next generation")
    _add_wf_args(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    _add_base_arg(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_actinfo_offspring_event)

    p = actsub.add_parser("one-step-fixation", help="fixation in a single generation (no mutation)")
    _add_wf_args(p, mutation=False)
    p.add_argument("--i", type=int, required=True)
    _add_base_arg(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_actinfo_one_step_fixation)

    fixation = sub.add_parser("fixation", help="eventual fixation of the A allele")
    fixsub = fixation.add_subparsers(dest="subcommand", required=True)

    p = fixsub.add_parser("exact", help="linear solve of the absorption system (no mutation)")
    _add_wf_args(p, mutation=False)
    p.add_argument("--i", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_fixation_exact)

    p = fixsub.add_parser("mc", help="Monte Carlo fixation probability")
    _add_wf_args(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--max-gens", type=_positive_int, default=None, help="generation cap (default 50*N)")
    p.add_argument("--seed", type=_uint64, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_fixation_mc)

    p = fixsub.add_parser("ai", help="active information of eventual fixation vs the neutral i/N")
    _add_wf_args(p)
    p.add_argument("--i", type=int, required=True)
    _add_base_arg(p)
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.add_argument("--trials", type=_positive_int, default=100_000)
    p.add_argument("--max-gens", type=_positive_int, default=None)
    p.add_argument("--seed", type=_uint64, default=None)
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_fixation_ai)

    diffusion = sub.add_parser("diffusion", help="diffusion-limit quantities (time in units of N generations)")
    diffsub = diffusion.add_subparsers(dest="subcommand", required=True)

    p = diffsub.add_parser("pfix", help="fixation probability from initial frequency p0")
    p.add_argument("--alpha", type=float, required=True, help="rescaled selection N*s")
    p.add_argument("--p0", type=float, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_diffusion_pfix)

    p = diffsub.add_parser("pfix-ai", help="active information of fixation vs the neutral p0")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p0", type=float, required=True)
    _add_base_arg(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_diffusion_pfix_ai)

    p = diffsub.add_parser("new-mutant", help="fixation probability of a single new mutant")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_diffusion_new_mutant)

    p = diffsub.add_parser("regime", help="classify (N, s) and report regime approximations")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    _add_base_arg(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_diffusion_regime)

    p = diffsub.add_parser("sde", help="one Euler-Maruyama path of the frequency diffusion")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--v1", type=float, default=0.0, help="rescaled mutation N*mu1")
    p.add_argument("--v2", type=float, default=0.0, help="rescaled mutation N*mu2")
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--seed", type=_uint64, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_diffusion_sde)

    coalescent = sub.add_parser("coalescent", help="backward-time pairwise coalescence")
    coalsub = coalescent.add_subparsers(dest="subcommand", required=True)

    p = coalsub.add_parser("geom-pmf", help="probability of first coalescence k generations back")
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_geom_pmf)

    p = coalsub.add_parser("geom-ai", help="active information when the size is nu instead of N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    _add_base_arg(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_geom_ai)

    p = coalsub.add_parser("geom-ai-limit", help="rescaled limit (1 - 1/c) d - ln c, in nats")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_geom_ai_limit)

    p = coalsub.add_parser("kingman-rate", help="coalescence rate i(i-1)/2 from i lineages")
    p.add_argument("--lineages", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_kingman_rate)

    p = coalsub.add_parser("kingman-tail-ai", help="tail-event information vs an exponential with mean mu")
    p.add_argument("--lineages", type=int, required=True)
    p.add_argument("--mu-alt", type=float, required=True, dest="mu_alt")
    p.add_argument("--t", type=float, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_kingman_tail_ai)

    p = coalsub.add_parser("kingman-tail-ai-scaled", help="tail-event information for a population scaled by c")
    p.add_argument("--lineages", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_kingman_tail_ai_scaled)

    p = coalsub.add_parser("tmrca", help="sample pairwise times to the most recent common ancestor")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--trials", type=_positive_int, required=True, help="number of samples")
    p.add_argument("--max-gens", type=_positive_int, default=None, help="censor cap (default 100*N)")
    p.add_argument("--seed", type=_uint64, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_coalescent_tmrca)

    p = sub.add_parser("sweep", help="evaluate a target over a cartesian parameter grid")
    p.add_argument("target", choices=sorted(SWEEP_TARGETS))
    p.add_argument("--vary", action="append", metavar="NAME=VALUES",
                   help="axis as NAME=v1,v2,.. or NAME=start:stop:step; axes in the order given, "
                        "first axis varying slowest")
    for flag in ("N", "i", "j", "k", "lineages"):
        p.add_argument(f"--{flag}", default=None)
    for flag in ("s", "mu1", "mu2", "alpha", "p0", "nu", "c", "d", "t", "mu-alt"):
        p.add_argument(f"--{flag}", default=None, dest=flag.replace("-", "_"))
    p.add_argument("--base", default=None, choices=("bits", "nats"))
    _add_output_args(p)
    p.set_defaults(handler=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records = args.handler(args)
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                _write_records(records, args.format, fh)
        else:
            _write_records(records, args.format, sys.stdout)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def run_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_main()
