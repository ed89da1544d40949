"""Command line interface.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .checks import run_checks
from .graph import (
    GraphError,
    gen_k4,
    gen_random_cubic,
    parse_cover,
    parse_graph,
    render_cover,
    render_graph,
    vc_approx_matching,
    vc_exact,
    validate_cubic,
)
from .labeling import (
    LabelingFormatError,
    is_feasible,
    labeling_cost,
    parse_labeling,
    render_labeling,
    validate_cover,
)
from .mapping import MappingError, block_costs, cover_to_labeling, labeling_to_cover, lreduction_report
from .model import AlignmentError, iter_runs, parse_alignment, render_alignment, symbol_occurrence_counts
from .reduction import parse_blockmap, reduce_graph, render_blockmap
from .solver import SolverError, brute_force_oracle, solve_exact
from .tokens import TokenError

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (
    GraphError,
    AlignmentError,
    LabelingFormatError,
    TokenError,
    SolverError,
    MappingError,
    OSError,
    json.JSONDecodeError,
    KeyError,
    TypeError,
)


class InputError(Exception):
    pass


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str):
    graph = parse_graph(_read(path))
    validate_cubic(graph)
    return graph


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def cmd_gen_graph(args) -> int:
    if args.kind == "k4":
        graph = gen_k4()
    else:
        if args.n is None:
            raise InputError("--n is required for --kind random")
        if args.n % 2 or args.n < 4:
            raise InputError(f"--n must be even and >= 4 (a cubic graph needs an even vertex count), got {args.n}")
        graph = gen_random_cubic(args.n, args.seed)
    _write(args.out, render_graph(graph))
    return EXIT_OK


def cmd_reduce(args) -> int:
    graph = _load_graph(args.graph)
    pair, bm = reduce_graph(graph)
    _write(args.instance, render_alignment(pair))
    if args.blockmap:
        _write(args.blockmap, render_blockmap(bm))
    counts = symbol_occurrence_counts(pair)
    peak_x = max(c[0] for c in counts.values())
    peak_y = max(c[1] for c in counts.values())
    peak = max(peak_x, peak_y)
    out = sys.stderr if args.instance in (None, "-") else sys.stdout
    if args.json:
        print(json.dumps({"columns": len(pair), "max_occurrence": peak,
                          "max_occurrence_x": peak_x, "max_occurrence_y": peak_y}), file=out)
    else:
        print(f"columns: {len(pair)}, max-occurrence: {peak}", file=out)
    return EXIT_OK


def cmd_solve(args) -> int:
    pair = parse_alignment(_read(args.instance))
    result = brute_force_oracle(pair) if args.mode == "oracle" else solve_exact(pair, args.budget)
    if args.out:
        _write(args.out, render_labeling(result.best))
    _emit(
        args,
        {"cost": result.cost, "proven_optimal": result.proven_optimal,
         "nodes_explored": result.nodes_explored},
        f"cost: {result.cost}, proven-optimal: {str(result.proven_optimal).lower()}, "
        f"nodes: {result.nodes_explored}",
    )
    return EXIT_OK


def cmd_vc(args) -> int:
    graph = _load_graph(args.graph)
    cover = vc_exact(graph) if args.mode == "exact" else vc_approx_matching(graph)
    if args.out:
        _write(args.out, render_cover(cover))
    _emit(args, {"size": len(cover), "vertices": sorted(cover)},
          f"size: {len(cover)}, vertices: {' '.join(map(str, sorted(cover)))}")
    return EXIT_OK


def cmd_map(args) -> int:
    graph = _load_graph(args.graph)
    pair, bm = reduce_graph(graph)
    if args.direction == "cover-to-labeling":
        if not args.cover:
            raise InputError("--cover is required for cover-to-labeling")
        lab = cover_to_labeling(graph, parse_cover(_read(args.cover)), pair, bm)
        _write(args.out, render_labeling(lab))
        if args.out not in (None, "-"):
            _emit(args, {"cost": labeling_cost(lab)}, f"cost: {labeling_cost(lab)}")
        return EXIT_OK
    if not args.labeling:
        raise InputError("--labeling is required for labeling-to-cover")
    lab = parse_labeling(_read(args.labeling))
    bad = validate_cover(pair, lab)
    if bad is not None:
        raise InputError(f"labeling is not a valid cover: {bad}")
    if not is_feasible(lab):
        raise InputError("labeling is not feasible")
    cover = labeling_to_cover(graph, pair, bm, lab)
    _write(args.out, render_cover(cover))
    if args.out not in (None, "-"):
        _emit(args, {"size": len(cover)}, f"size: {len(cover)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    pair = parse_alignment(_read(args.instance))
    lab = parse_labeling(_read(args.labeling))
    bad = validate_cover(pair, lab)
    feasible = is_feasible(lab)
    cost = labeling_cost(lab)
    if args.blockmap:
        breakdown = block_costs(lab, parse_blockmap(_read(args.blockmap)))
    else:
        breakdown = {}
        for genome, run in iter_runs(pair):
            name = f"{genome.value}[{run.start},{run.end})"
            breakdown[name] = sum(ev.cost for ev in lab.events
                                  if ev.genome is genome and run.contains(ev.target))
    payload = {
        "cover_valid": bad is None,
        "violation": None if bad is None else str(bad),
        "feasible": feasible,
        "cost": cost,
        "blocks": breakdown,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"cover-valid: {str(bad is None).lower()}, feasible: {str(feasible).lower()}, cost: {cost}")
        if bad is not None:
            print(f"violation: {bad}")
        for name, c in breakdown.items():
            print(f"  {name:<16} {c}")
    return EXIT_OK if bad is None and feasible else EXIT_CHECK_FAILED


def cmd_check_lemmas(args) -> int:
    graph = _load_graph(args.graph)
    results = run_checks(graph, certify=not args.no_certify)
    failed = [r for r in results if not r.ok]
    if args.json:
        print(json.dumps({"ok": not failed, "checks": [r.to_dict() for r in results]}))
    else:
        width = max(len(r.subject) for r in results)
        for r in results:
            print(f"{r.name:<20} {r.subject:<{width}}  {r.detail:<46} {'ok' if r.ok else 'FAIL'}")
    for r in failed:
        print(f"check failed: {r.name} ({r.subject}): {r.detail}", file=sys.stderr)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_report(args) -> int:
    rep = lreduction_report(_load_graph(args.graph))
    if args.json:
        sys.stdout.write(rep.render())
    else:
        print(f"n: {rep.n}, edges: {rep.edges}, tau: {rep.tau}, opt-cost: {rep.opt_cost}, "
              f"identity: {str(rep.identity_ok).lower()}, apx-bound: {str(rep.apx_bound_ok).lower()}")
    return EXIT_OK if rep.identity_ok and rep.apx_bound_ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mla", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = command("gen-graph", cmd_gen_graph, "write a cubic graph file")
    p.add_argument("--kind", choices=["k4", "random"], default="k4")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = command("reduce", cmd_reduce, "build the aligned genome pair for a graph")
    p.add_argument("graph")
    p.add_argument("--instance", help="instance output path (default stdout)")
    p.add_argument("--blockmap", help="block map sidecar output path")

    p = command("solve", cmd_solve, "minimum-cost feasible labeling of an instance")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["exact", "oracle"], default="exact")
    p.add_argument("--budget", type=int, default=2_000_000, help="node limit for exact mode")
    p.add_argument("--out", help="write the best labeling here")

    p = command("vc", cmd_vc, "vertex cover of a cubic graph")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["exact", "approx"], default="exact")
    p.add_argument("--out")

    p = command("map", cmd_map, "translate between covers and labelings")
    p.add_argument("direction", choices=["cover-to-labeling", "labeling-to-cover"])
    p.add_argument("graph")
    p.add_argument("--cover")
    p.add_argument("--labeling")
    p.add_argument("--out")

    p = command("verify", cmd_verify, "check a labeling against an instance")
    p.add_argument("instance")
    p.add_argument("labeling")
    p.add_argument("--blockmap")

    p = command("check-lemmas", cmd_check_lemmas, "run every reduction check on a graph")
    p.add_argument("graph")
    p.add_argument("--no-certify", action="store_true", help="skip the optimum certificate")

    p = command("report", cmd_report, "cover size versus optimum labeling cost")
    p.add_argument("graph")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
