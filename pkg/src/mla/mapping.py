"""Translating between vertex covers and labelings of reduced instances.

A vertex block labeled with the cost-7 pattern (``TYPE_A``: z-pairs copied
from A1, encoding triples copied from the edge blocks) stands for a vertex
outside the cover; the cost-8 pattern (``TYPE_B``: six copies from A2 plus
losses of ``z_{i,1}`` and ``z_{i,8}``) stands for a vertex in the cover. Each
edge block costs 2 when its encoding triple is copied from a covered
endpoint.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .graph import CubicGraph, Edge, is_vertex_cover, order_edges, vc_exact
from .labeling import (
    DupEvent,
    Event,
    Labeling,
    LossEvent,
    canonical,
    is_feasible,
    labeling_cost,
)
from .model import AlignedPair, Genome, Interval
from .reduction import BlockMap, enc_anchor, reduce_graph
from .solver import iter_block_labelings, solve_block_relaxed

X = Genome.X


class BlockLabelClass(str, Enum):
    TYPE_A = "type-a"
    TYPE_B = "type-b"
    OTHER = "other"


class MappingError(ValueError):
    pass


def _incident_edges(vertex: int, blockmap: BlockMap) -> list[Edge]:
    anchors = blockmap.vertex(vertex).anchors
    edges = []
    for name in anchors:
        if name.startswith("enc:e:"):
            _, _, i, j = name.split(":")
            edges.append((int(i), int(j)))
    return edges


def type_a_labeling(vertex: int, blockmap: BlockMap) -> list[Event]:
    ve, a1 = blockmap.vertex(vertex).anchors, blockmap.a1(vertex).anchors
    events: list[Event] = []
    for k in range(1, 5):
        name = f"z:{2 * k - 1}-{2 * k}"
        events.append(DupEvent(X, ve[name], a1[name]))
    for edge in _incident_edges(vertex, blockmap):
        side = "i-enc" if vertex == edge[0] else "j-enc"
        events.append(DupEvent(X, ve[enc_anchor(edge)], blockmap.edge(edge).anchors[side]))
    return sorted(events, key=lambda e: e.target.start)


def type_b_labeling(vertex: int, blockmap: BlockMap) -> list[Event]:
    ve, a2 = blockmap.vertex(vertex).anchors, blockmap.a2(vertex).anchors
    events: list[Event] = [DupEvent(X, ve[f"b:{k}"], a2[f"a2src:{k}"]) for k in range(1, 7)]
    events += [LossEvent(X, ve["z:1"]), LossEvent(X, ve["z:8"])]
    return sorted(events, key=lambda e: e.target.start)


def edge_labeling(edge: Edge, endpoint: int, blockmap: BlockMap) -> list[Event]:
    """Copy the endpoint's encoding triple from its vertex block, lose the other ``x``."""
    i, j = edge
    if endpoint not in edge:
        raise MappingError(f"vertex {endpoint} is not an endpoint of edge {edge}")
    anchors = blockmap.edge(edge).anchors
    source = blockmap.vertex(endpoint).anchors[enc_anchor(edge)]
    if endpoint == i:
        return [DupEvent(X, anchors["i-enc"], source), LossEvent(X, anchors["x:j"])]
    return [LossEvent(X, anchors["x:i"]), DupEvent(X, anchors["j-enc"], source)]


def cover_labeling_cost(n: int, m: int, covered: int) -> int:
    """8 per covered vertex, 7 per other vertex, 2 per edge."""
    return 8 * covered + 7 * (n - covered) + 2 * m


def _edge_endpoint(edge: Edge, chosen: set[int]) -> int:
    i, j = edge
    if i in chosen:
        return i
    if j in chosen:
        return j
    raise MappingError(f"edge {edge} is not covered")


def cover_to_labeling(
    graph: CubicGraph, cover: Iterable[int], pair: AlignedPair, blockmap: BlockMap
) -> Labeling:
    cover = set(cover)
    if not is_vertex_cover(graph, cover):
        missing = next(e for e in graph.edges if e[0] not in cover and e[1] not in cover)
        raise MappingError(f"not a vertex cover: edge {missing} is uncovered")
    events: list[Event] = []
    for v in graph.vertices:
        events += type_b_labeling(v, blockmap) if v in cover else type_a_labeling(v, blockmap)
    for e in order_edges(graph).edges:
        events += edge_labeling(e, _edge_endpoint(e, cover), blockmap)
    return canonical(events)


def _events_in(labeling: Labeling, block: Interval) -> list[Event]:
    return [ev for ev in labeling.events if block.contains(ev.target)]


def classify_vertex_block(labeling: Labeling, vertex: int, blockmap: BlockMap) -> BlockLabelClass:
    mine = canonical(_events_in(labeling, blockmap.vertex(vertex).interval)).key()
    if mine == canonical(type_a_labeling(vertex, blockmap)).key():
        return BlockLabelClass.TYPE_A
    if mine == canonical(type_b_labeling(vertex, blockmap)).key():
        return BlockLabelClass.TYPE_B
    return BlockLabelClass.OTHER


def _replace_block(events: list[Event], block: Interval, new: list[Event]) -> list[Event]:
    return [ev for ev in events if not block.contains(ev.target)] + new


def normalize_labeling(
    graph: CubicGraph, pair: AlignedPair, blockmap: BlockMap, labeling: Labeling
) -> Labeling:
    """Rewrite a feasible labeling into the canonical cover-shaped form.

    1. every vertex block that is not the cost-7 pattern becomes the cost-8 one;
    2. an edge whose endpoints are both cost-7 flips its lower endpoint to cost-8;
    3. every edge block copies its triple from a cost-8 endpoint (lower first).

    The result is feasible and never costs more than the input.
    """
    events = list(labeling.events)
    covered: set[int] = set()
    for v in graph.vertices:
        if classify_vertex_block(labeling, v, blockmap) is not BlockLabelClass.TYPE_A:
            events = _replace_block(events, blockmap.vertex(v).interval, type_b_labeling(v, blockmap))
            covered.add(v)
    order = order_edges(graph)
    for i, j in order.edges:
        if i not in covered and j not in covered:
            events = _replace_block(events, blockmap.vertex(i).interval, type_b_labeling(i, blockmap))
            covered.add(i)
    for e in order.edges:
        events = _replace_block(
            events, blockmap.edge(e).interval, edge_labeling(e, _edge_endpoint(e, covered), blockmap)
        )
    return canonical(events)


def labeling_to_cover(
    graph: CubicGraph, pair: AlignedPair, blockmap: BlockMap, labeling: Labeling
) -> frozenset[int]:
    norm = normalize_labeling(graph, pair, blockmap, labeling)
    return frozenset(
        v
        for v in graph.vertices
        if classify_vertex_block(norm, v, blockmap) is BlockLabelClass.TYPE_B
    )


def block_costs(labeling: Labeling, blockmap: BlockMap) -> dict[str, int]:
    """Cost of the events targeting each block (blocks with no events omitted)."""
    out: dict[str, int] = {}
    for ev in labeling.events:
        name = blockmap.block_of(ev.target.start).name
        out[name] = out.get(name, 0) + ev.cost
    return out


# -- cover size versus optimum cost ----------------------------------------------


@dataclass
class LReductionReport:
    n: int
    edges: int
    tau: int
    opt_cost: int
    identity_ok: bool
    apx_bound_ok: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edges,
            "tau": self.tau,
            "opt_cost": self.opt_cost,
            "identity_ok": self.identity_ok,
            "apx_bound_ok": self.apx_bound_ok,
        }

    def render(self) -> str:
        return json.dumps(self.to_dict()) + "\n"


def lreduction_report(graph: CubicGraph) -> LReductionReport:
    cover = vc_exact(graph)
    pair, bm = reduce_graph(graph)
    lab = cover_to_labeling(graph, cover, pair, bm)
    tau, cost, n = len(cover), labeling_cost(lab), graph.n
    return LReductionReport(
        n=n,
        edges=len(graph.edges),
        tau=tau,
        opt_cost=cost,
        identity_ok=cost == cover_labeling_cost(n, len(graph.edges), tau) == tau + 10 * n,
        apx_bound_ok=cost <= 41 * tau,
    )


# -- optimum certificate -----------------------------------------------------------


@dataclass
class OptimumCertificate:
    """Matching lower and upper bounds on the optimum of a reduced instance.

    ``lower`` is the minimum, over every choice of which vertex blocks use the
    cost-7 pattern, of the per-block lower bounds: cost 7 for a pattern block,
    the relaxed block minimum (plus one when the pattern is the unique
    relaxed minimiser) otherwise, and for each edge block the cheapest
    covering that stays acyclic together with its pattern endpoints.
    """

    tau: int
    lower: int
    upper: int
    vertex_min: dict[int, int] = field(default_factory=dict)
    vertex_unique_type_a: dict[int, bool] = field(default_factory=dict)
    edge_min: dict[Edge, dict[tuple[int, ...], int]] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.lower == self.upper


def optimum_certificate(graph: CubicGraph, max_n: int = 12) -> OptimumCertificate:
    if graph.n > max_n:
        raise MappingError(f"certificate enumerates 2^n vertex states; n={graph.n} > {max_n}")
    pair, bm = reduce_graph(graph)
    type_a = {v: canonical(type_a_labeling(v, bm)) for v in graph.vertices}

    vertex_min, unique, other_lb = {}, {}, {}
    for v in graph.vertices:
        lo, argmins = solve_block_relaxed(pair, bm.vertex(v).interval)
        vertex_min[v] = lo
        unique[v] = [a.key() for a in argmins] == [type_a[v].key()]
        other_lb[v] = lo + 1 if unique[v] else lo

    order = order_edges(graph)
    edge_min: dict[Edge, dict[tuple[int, ...], int]] = {}
    for e in order.edges:
        coverings = list(iter_block_labelings(pair, bm.edge(e).interval))
        table = {}
        for k in range(3):
            for fixed in itertools.combinations(e, k):
                ctx = [ev for v in fixed for ev in type_a[v].events]
                table[fixed] = min(
                    labeling_cost(c) for c in coverings if is_feasible(ctx + list(c.events))
                )
        edge_min[e] = table

    lower: Optional[int] = None
    for states in itertools.product((True, False), repeat=graph.n):
        pattern = {v for v, a in zip(graph.vertices, states) if a}
        total = sum(labeling_cost(type_a[v]) if v in pattern else other_lb[v] for v in graph.vertices)
        for e in order.edges:
            total += edge_min[e][tuple(v for v in e if v in pattern)]
        lower = total if lower is None else min(lower, total)

    cover = vc_exact(graph)
    upper = labeling_cost(cover_to_labeling(graph, cover, pair, bm))
    return OptimumCertificate(len(cover), lower, upper, vertex_min, unique, edge_min)
