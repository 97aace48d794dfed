#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Main entry point for spectral continuous-time quantum walks on graphs.

Subcommands: gen, stratify, lanczos, measure, walk, verify, gqd.
Data goes to --out (or stdout); diagnostics go to stderr.
Exit codes: 0 ok, 1 verification failed, 2 input error, 3 numerical failure.
"""

import argparse
import os
import sys
from typing import Dict, List, Optional

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from data.edge_list import emit_edge_list, read_edge_list
from data.export import series_to_csv, series_to_dict, to_json
from model.config import RunConfig, load_defaults
from model.errors import SpectralWalkError
from model.graph import Graph, generate, stratify
from model.lanczos import complete_basis, lanczos_run, unit_vector
from model.pipeline import run_walk, verify, verify_random
from model.spectral import measure_from_jacobi
from model.walk import gqd_certify

QUIET = False


def log(tag: str, message: str) -> None:
    if not QUIET:
        print(f"[{tag}] {message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Continuous-time quantum walks via Lanczos tridiagonalization and spectral distributions"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("graph source")
    source.add_argument("--graph", type=str, help="Edge-list file")
    source.add_argument("--gen", type=str, choices=["path", "kite", "tree-fig4", "random"],
                        help="Named generator")
    source.add_argument("--n", type=int, help="Generator size parameter")
    source.add_argument("--k", type=int, help="Kite dimension")
    source.add_argument("--p", type=float, help="Random-graph edge probability")
    source.add_argument("--seed", type=int, help="Random-graph seed")
    common.add_argument("--start", type=int, default=0, help="Start (reference) vertex")
    common.add_argument("--t-max", type=float, help="End of the time grid")
    common.add_argument("--steps", type=int, help="Number of time points")
    common.add_argument("--time-scale", type=float, help="Evolve under exp(-iAt/s)")
    common.add_argument("--format", dest="fmt", choices=["json", "csv"], help="Output format")
    common.add_argument("--out", type=str, help="Output path (default stdout)")
    common.add_argument("--tol", type=float, help="Tolerance override")
    common.add_argument("--config", type=str, help="YAML defaults file")
    common.add_argument("--quiet", action="store_true", help="Suppress informational messages")

    gen = sub.add_parser("gen", parents=[common], help="Write a generated graph as an edge list")
    gen.add_argument("kind", choices=["path", "kite", "tree-fig4", "random"])

    sub.add_parser("stratify", parents=[common], help="Distance partition from --start")
    sub.add_parser("lanczos", parents=[common], help="Jacobi coefficients and Lanczos bases")
    sub.add_parser("measure", parents=[common], help="Spectral measure of the start vertex")
    sub.add_parser("walk", parents=[common], help="Krylov and vertex amplitudes on a time grid")
    verify_parser = sub.add_parser("verify", parents=[common], help="Compare with dense exact evolution")
    verify_parser.add_argument("--trials", type=int,
                               help="Verify this many seeded random graphs instead of one graph")
    verify_parser.add_argument("--n-max", type=int, default=40, help="Largest random graph size")
    sub.add_parser("gqd", parents=[common], help="QD/GQD certificate")
    return parser


def load_graph(args, config: RunConfig) -> Graph:
    if args.graph and args.gen:
        raise SystemExit("choose either --graph or --gen")
    if args.graph:
        log("graph", f"Loading edge list from {args.graph}")
        return read_edge_list(args.graph)
    if not args.gen:
        raise SystemExit("a graph source is required: --graph PATH or --gen NAME")
    if args.gen == "random":
        log("graph", f"Random graph n={args.n} p={config.p} seed={config.seed}")
    return generate(args.gen, n=args.n, k=args.k, p=config.p, seed=config.seed, max_tries=config.max_tries)


def make_config(args, defaults: Dict) -> RunConfig:
    return RunConfig.from_sources({
        "start": args.start,
        "t_max": args.t_max,
        "steps": args.steps,
        "time_scale": args.time_scale,
        "fmt": args.fmt,
        "out": args.out,
        "tol": args.tol,
        "seed": args.seed,
        "p": args.p,
    }, defaults)


def emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        log("out", f"Wrote {out}")
    else:
        sys.stdout.write(text)


def cmd_gen(args, config: RunConfig) -> int:
    args.gen = args.kind
    g = load_graph(args, config)
    emit(emit_edge_list(g), args.out)
    log("gen", f"{args.kind}: {g.n} vertices, {g.edge_count} edges")
    return 0


def cmd_stratify(args, config: RunConfig, g: Graph) -> int:
    s = stratify(g, config.start)
    for warning in s.warnings:
        log("stratify", f"warning: {warning}")
    emit(to_json({"reference": s.reference, "depth": s.depth,
                  "strata": [list(stratum) for stratum in s.strata],
                  "warnings": list(s.warnings)}, indent=2) + "\n", config.out)
    return 0


def cmd_lanczos(args, config: RunConfig, g: Graph) -> int:
    s = stratify(g, config.start)
    tol = config.breakdown_tol(g)
    jacobi, basis = lanczos_run(g, unit_vector(g.n, config.start), breakdown_tol=tol)
    supplements = []
    if basis.size < s.component_size:
        supplements = complete_basis(g, [basis], breakdown_tol=tol, component=s.component)
    log("lanczos", f"Krylov dimension {basis.size}, {len(supplements)} supplementary bases")
    emit(to_json({"jacobi": jacobi.to_dict(),
                  "basis": basis.vectors,
                  "supplements": [b.vectors for b in supplements]}, indent=2) + "\n", config.out)
    return 0


def cmd_measure(args, config: RunConfig, g: Graph) -> int:
    jacobi, _ = lanczos_run(g, unit_vector(g.n, config.start), breakdown_tol=config.breakdown_tol(g))
    emit(to_json(measure_from_jacobi(jacobi).to_dict(), indent=2) + "\n", config.out)
    return 0


def cmd_walk(args, config: RunConfig, g: Graph) -> int:
    result = run_walk(g, config.start, config.times(), config.time_scale,
                      breakdown_factor=config.breakdown_factor, gqd_tol=config.gqd_tol)
    for warning in result.warnings:
        log("walk", f"warning: {warning}")
    log("walk", f"Krylov dimension {result.basis.size}, certificate {result.certificate.status}, "
                f"conservation defect {result.series.conservation_defect():.2e}")

    if config.fmt == "csv":
        emit(series_to_csv(result.series), config.out)
    else:
        doc = {"metadata": result.metadata(), **series_to_dict(result.series)}
        emit(to_json(doc) + "\n", config.out)
    return 0


def cmd_verify(args, config: RunConfig, g: Optional[Graph]) -> int:
    times = config.times()
    if args.trials:
        reports = verify_random(args.trials, args.n_max, config.seed, times, tol=config.tol,
                                p=config.p, max_tries=config.max_tries, progress=not QUIET,
                                time_scale=config.time_scale, dense_cap=config.dense_cap,
                                breakdown_factor=config.breakdown_factor, gqd_tol=config.gqd_tol)
        failed = [r for r in reports if not r.passed]
        worst = max(r.max_deviation for r in reports)
        log("verify", f"{len(reports)} graphs from seed {config.seed}: worst deviation {worst:.3e}, "
                      f"{len(failed)} failed")
        emit(to_json({"seed": config.seed, "trials": len(reports), "worst_deviation": worst,
                      "passed": not failed, "reports": [r.to_dict() for r in reports]},
                     indent=2) + "\n", config.out)
        return 0 if not failed else 1

    report = verify(g, config.start, times, tol=config.tol, time_scale=config.time_scale,
                    dense_cap=config.dense_cap, seed=config.seed if args.gen == "random" else None,
                    breakdown_factor=config.breakdown_factor, gqd_tol=config.gqd_tol)
    if report.supplementary_vectors:
        log("verify", f"Krylov space is proper: {report.supplementary_vectors} supplementary vector(s)")
    log("verify", f"max deviation {report.max_deviation:.3e} "
                  f"({'pass' if report.passed else 'FAIL'} at tol {config.tol:g})")
    emit(to_json(report.to_dict(), indent=2) + "\n", config.out)
    return 0 if report.passed else 1


def cmd_gqd(args, config: RunConfig, g: Graph) -> int:
    s = stratify(g, config.start)
    jacobi, basis = lanczos_run(g, unit_vector(g.n, config.start), breakdown_tol=config.breakdown_tol(g))
    certificate = gqd_certify(g, s, basis, jacobi, tol=config.gqd_tol)
    log("gqd", f"status {certificate.status}")
    emit(to_json(certificate.to_dict(), indent=2) + "\n", config.out)
    return 0


COMMANDS = {
    "stratify": cmd_stratify,
    "lanczos": cmd_lanczos,
    "measure": cmd_measure,
    "walk": cmd_walk,
    "verify": cmd_verify,
    "gqd": cmd_gqd,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function."""
    global QUIET
    args = build_parser().parse_args(argv)
    QUIET = args.quiet

    try:
        config = make_config(args, load_defaults(args.config))
        if args.command == "gen":
            return cmd_gen(args, config)

        if args.command == "verify" and args.trials:
            return cmd_verify(args, config, None)
        g = load_graph(args, config)
        config.check_start(g.n)
        return COMMANDS[args.command](args, config, g)

    except SystemExit as e:
        if isinstance(e.code, str):
            print(f"[error] {e.code}", file=sys.stderr)
            return 2
        raise
    except (SpectralWalkError, ValueError, ArithmeticError, OSError, RuntimeError) as e:
        kind = getattr(e, "kind", type(e).__name__)
        print(f"[error] {kind}: {e}", file=sys.stderr)
        return 3 if isinstance(e, (ArithmeticError, RuntimeError)) else 2


if __name__ == "__main__":
    sys.exit(main())
