"""Named verification checks run by ``mla check-lemmas``."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CubicGraph, cubic_violations, is_vertex_cover, order_edges, vc_approx_matching, vc_exact
from .labeling import DupEvent, canonical, is_feasible, labeling_cost, validate_cover
from .mapping import (
    cover_to_labeling,
    cover_labeling_cost,
    labeling_to_cover,
    lreduction_report,
    optimum_certificate,
    type_a_labeling,
)
from .model import symbol_occurrence_counts
from .reduction import expected_columns, reduce_graph
from .solver import solve_block_relaxed

MAX_OCCURRENCES = 5
CERTIFY_MAX_N = 10


@dataclass
class CheckResult:
    name: str
    subject: str
    detail: str
    ok: bool

    def to_dict(self) -> dict:
        return {"check": self.name, "subject": self.subject, "detail": self.detail, "ok": self.ok}


def run_checks(graph: CubicGraph, certify: bool = True) -> list[CheckResult]:
    out: list[CheckResult] = []
    add = lambda *a: out.append(CheckResult(*a))  # noqa: E731

    problems = cubic_violations(graph)
    add("cubic-graph", f"n={graph.n}", "; ".join(problems) or f"|E|={len(graph.edges)}", not problems)
    if problems:
        return out
    n, m = graph.n, len(graph.edges)
    pair, bm = reduce_graph(graph)
    peak = max(max(c) for c in symbol_occurrence_counts(pair).values())
    add("construction", "instance", f"columns {len(pair)}, max-occurrence {peak}",
        len(pair) == expected_columns(n) and peak <= MAX_OCCURRENCES)

    for v in graph.vertices:
        lo, argmins = solve_block_relaxed(pair, bm.vertex(v).interval)
        unique = [a.key() for a in argmins] == [canonical(type_a_labeling(v, bm)).key()]
        add("vertex-block-min", bm.vertex(v).name,
            f"min {lo}, {len(argmins)} argmin{'' if len(argmins) == 1 else 's'}"
            + (", type-a unique" if unique else ""), lo == 7 and unique)

    for e in order_edges(graph).edges:
        lo, argmins = solve_block_relaxed(pair, bm.edge(e).interval)
        endpoint_blocks = [bm.vertex(v).interval for v in e]
        sourced = all(
            any(isinstance(ev, DupEvent) and any(b.contains(ev.source) for b in endpoint_blocks)
                for ev in lab.events)
            for lab in argmins
        )
        add("edge-block-min", bm.edge(e).name,
            f"min {lo}, {len(argmins)} argmins" + (", all copy from an endpoint" if sourced else ""),
            lo == 2 and sourced)

    covers = {"exact": vc_exact(graph), "approx": vc_approx_matching(graph)}
    for label, cover in covers.items():
        lab = cover_to_labeling(graph, cover, pair, bm)
        cost = labeling_cost(lab)
        want = cover_labeling_cost(n, m, len(cover))
        ok = validate_cover(pair, lab) is None and is_feasible(lab) and cost == want
        add("cover-to-labeling", f"{label} cover |V'|={len(cover)}", f"cost {cost} (formula {want})", ok)
        back = labeling_to_cover(graph, pair, bm, lab)
        add("labeling-to-cover", f"{label} cover |V'|={len(cover)}",
            f"round trip size {len(back)}",
            is_vertex_cover(graph, back) and len(back) <= len(cover))

    rep = lreduction_report(graph)
    add("edge-count", f"n={n}", f"|E|={m} = 3n/2", 2 * m == 3 * n)
    add("cover-size-floor", f"n={n}", f"tau={rep.tau} >= n/4", 4 * rep.tau >= n)
    add("optimum-identity", f"n={n}", f"{rep.opt_cost} = {rep.tau} + {10 * n}", rep.identity_ok)
    add("apx-bound", f"n={n}", f"{rep.opt_cost} <= 41*{rep.tau}", rep.apx_bound_ok)
    if certify and n <= CERTIFY_MAX_N:
        cert = optimum_certificate(graph)
        add("optimum-certificate", f"n={n}", f"lower {cert.lower}, upper {cert.upper}",
            cert.certified and cert.upper == rep.opt_cost)
    return out
