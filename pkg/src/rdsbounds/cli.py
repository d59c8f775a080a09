"""Command-line interface: estimate, identify, simulate, enumerate.

Result documents are JSON on stdout; ``identify``'s per-objective traces
and witness subgraphs, and ``simulate``'s study files, are written under
``--out-dir``. All randomness flows from ``--seed``; outputs are byte
identical across runs for identical inputs and seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .annealing import IdentifyConfig, exact_bounds, identify
from .compatibility import EnumerationCaps
from .errors import (
    CapExceededError,
    InconsistentInputError,
    StudyParseError,
    StudyValidationError,
    UndefinedEstimandError,
)
from .fileio import parse_study_file, render_json, render_trace, serialize_study
from .graphs import StudyData
from .measures import homophily, pref_recruitment
from .simulate import PopulationConfig, RdsProcessConfig, generate_population, run_rds
from .validation import check_compatible, check_study_data, drop_missing_traits

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_UNDEFINED = 4
EXIT_CAPS = 5


def _parse_caps(text: str) -> EnumerationCaps:
    try:
        max_n, max_residual = (int(tok) for tok in text.split(","))
    except ValueError:
        raise StudyParseError(f"--caps must be 'N,RESIDUAL', got {text!r}") from None
    return EnumerationCaps(max_n=max_n, max_residual=max_residual)


def _out_dir(args) -> Path | None:
    if args.out_dir is None:
        return None
    path = Path(args.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_estimate(args) -> int:
    parsed = parse_study_file(args.study)
    if parsed.subgraph is None:
        raise StudyParseError("estimate requires a study file with an [edges] section")
    study = check_study_data(parsed.study)
    check_compatible(parsed.subgraph, study)
    g_su, dropped_v, dropped_e = drop_missing_traits(parsed.subgraph)
    hv = homophily(g_su)
    pv = pref_recruitment(g_su)
    doc = {
        "h": hv.value,
        "p": pv.value,
        "pair_count": hv.pair_count,
        "n": study.n,
        "n_unsampled": len(g_su.unsampled),
        "n_edges": len(g_su.edges),
        "dropped_vertices": dropped_v,
        "dropped_edges": dropped_e,
    }
    sys.stdout.write(render_json(doc))
    return EXIT_OK


def _identify_doc(result, study: StudyData, config: IdentifyConfig) -> dict:
    doc = {
        "n": study.n,
        "n_seeds": study.n_seeds,
        "method": result.method,
        "interval_h": list(result.interval_h),
        "interval_p": list(result.interval_p),
        "rectangle": {"h": list(result.interval_h), "p": list(result.interval_p)},
        "witnesses": {
            kind: {
                "h": w.h,
                "p": w.p,
                "n_unsampled": len(w.subgraph.unsampled),
                "n_edges": len(w.subgraph.edges),
            }
            for kind, w in sorted(result.witnesses.items())
        },
        "config": {
            "budget": config.budget,
            "epsilon": config.epsilon,
            "kernel_mix": config.kernel_mix,
            "chains": config.chains,
            "schedule": config.schedule_kind,
            "exact": config.exact,
            "seed": config.seed,
        },
    }
    if result.method == "exact":
        doc["classes"] = result.classes
        doc["feasible_classes"] = result.feasible_classes
    else:
        doc["objectives"] = {
            target: {
                "chain_best_j": diag.chain_best_j,
                "chain_best_value": diag.chain_best_value,
                "agreement_spread": diag.agreement_spread,
                "acceptance_rates": diag.acceptance_rates,
                "last_improvement_steps": diag.last_improvement_steps,
                "stalled": diag.stalled,
            }
            for target, diag in sorted(result.diagnostics.items())
        }
    return doc


def cmd_identify(args) -> int:
    parsed = parse_study_file(args.study)
    if parsed.subgraph is not None:
        print("note: ignoring the [edges] section; identify uses the observed data only", file=sys.stderr)
    study = check_study_data(parsed.study)
    config = IdentifyConfig(
        budget=args.budget,
        epsilon=args.epsilon,
        kernel_mix=args.kernel_mix,
        chains=args.chains,
        schedule_kind=args.schedule,
        exact=args.exact,
        caps=_parse_caps(args.caps),
        stall_window=args.stall_window,
        seed=args.seed,
    )
    result = identify(study, config)
    doc = _identify_doc(result, study, config)
    out = _out_dir(args)
    if out is not None:
        (out / "result.json").write_text(render_json(doc))
        if result.runs is not None:
            for target, chain_runs in result.runs.items():
                best_chain = max(range(len(chain_runs)), key=lambda k: chain_runs[k].best.j_value)
                rows = chain_runs[best_chain].trace or []
                (out / f"trace_{target}.tsv").write_text(render_trace(rows))
        for kind, witness in result.witnesses.items():
            (out / f"witness_{kind}.tsv").write_text(serialize_study(study, witness.subgraph))
    sys.stdout.write(render_json(doc))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    parsed = parse_study_file(args.study)
    study = check_study_data(parsed.study)
    result = exact_bounds(study, _parse_caps(args.caps))
    doc = {
        "n": study.n,
        "n_seeds": study.n_seeds,
        "method": result.method,
        "interval_h": list(result.interval_h),
        "interval_p": list(result.interval_p),
        "rectangle": {"h": list(result.interval_h), "p": list(result.interval_p)},
        "classes": result.classes,
        "feasible_classes": result.feasible_classes,
    }
    sys.stdout.write(render_json(doc))
    return EXIT_OK


def cmd_simulate(args) -> int:
    pop_cfg = PopulationConfig(
        n_vertices=args.population,
        trait_prevalence=args.prevalence,
        p_within=args.p_within,
        p_between=args.p_between,
    )
    rds_cfg = RdsProcessConfig(
        n_seeds=args.n_seeds,
        coupons=args.coupons,
        sample_size=args.sample_size,
        beta=args.beta,
        seed_trait=args.seed_trait,
    )
    from .rng import spawn_rngs

    pop_rng, rds_rng = spawn_rngs(args.seed, 2)
    pop = generate_population(pop_cfg, pop_rng)
    sample = run_rds(pop, rds_cfg, rds_rng)
    out = _out_dir(args)
    if out is None:
        raise StudyParseError("simulate requires --out-dir")
    observed_path = out / "observed.tsv"
    truth_path = out / "truth.tsv"
    observed_path.write_text(serialize_study(sample.study))
    truth_path.write_text(serialize_study(sample.study, sample.truth))
    doc = {
        "n": sample.study.n,
        "n_seeds": sample.study.n_seeds,
        "n_unsampled": len(sample.truth.unsampled),
        "n_edges": len(sample.truth.edges),
        "observed": str(observed_path),
        "truth": str(truth_path),
    }
    sys.stdout.write(render_json(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdsbounds",
        description="Homophily and preferential recruitment from RDS data: "
        "point estimates and identification intervals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="point estimates from a study file with a known subgraph")
    est.add_argument("study")
    est.set_defaults(func=cmd_estimate)

    ident = sub.add_parser("identify", help="identification intervals from observed RDS data alone")
    ident.add_argument("study")
    ident.add_argument("--seed", type=int, default=None)
    ident.add_argument("--budget", type=int, default=10_000)
    ident.add_argument("--epsilon", type=float, default=0.05)
    ident.add_argument(
        "--kernel-mix",
        type=float,
        default=0.5,
        help="probability a step proposes a trait flip (rest are edge rewires)",
    )
    ident.add_argument("--chains", type=int, default=4)
    ident.add_argument("--schedule", choices=("logarithmic", "geometric"), default="logarithmic")
    ident.add_argument("--exact", action="store_true", help="exhaustive enumeration instead of annealing")
    ident.add_argument("--caps", default="8,8", help="enumeration caps as 'N,RESIDUAL'")
    ident.add_argument("--stall-window", type=int, default=None)
    ident.add_argument("--out-dir", default=None)
    ident.set_defaults(func=cmd_identify)

    enum = sub.add_parser("enumerate", help="exact oracle intervals by exhaustive enumeration")
    enum.add_argument("study")
    enum.add_argument("--caps", default="8,8")
    enum.set_defaults(func=cmd_enumerate)

    sim = sub.add_parser("simulate", help="generate a synthetic (observable, truth) study pair")
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--population", type=int, default=50)
    sim.add_argument("--prevalence", type=float, default=0.5)
    sim.add_argument("--p-within", type=float, default=0.15)
    sim.add_argument("--p-between", type=float, default=0.15)
    sim.add_argument("--n-seeds", type=int, default=2)
    sim.add_argument("--coupons", type=int, default=3)
    sim.add_argument("--sample-size", type=int, default=20)
    sim.add_argument("--beta", type=float, default=0.0)
    sim.add_argument("--seed-trait", type=int, choices=(0, 1), default=None)
    sim.add_argument("--out-dir", default=None)
    sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StudyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (StudyValidationError, InconsistentInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UndefinedEstimandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPS


if __name__ == "__main__":
    sys.exit(main())
