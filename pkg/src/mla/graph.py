"""Cubic graphs, edge ordering, vertex cover and generators.

Vertices are 1-based. Edges are stored as ``(i, j)`` with ``i < j``.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Union

Edge = tuple[int, int]

VC_EXACT_MAX_N = 24
RANDOM_CUBIC_ATTEMPTS = 10_000


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class CubicGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbours(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            adj.setdefault(i, []).append(j)
            adj.setdefault(j, []).append(i)
        return adj


def cubic_violations(graph: CubicGraph) -> list[str]:
    problems = []
    if graph.n < 0:
        problems.append(f"negative vertex count {graph.n}")
    seen = set()
    degree: dict[int, int] = defaultdict(int)
    for e in graph.edges:
        if len(e) != 2:
            problems.append(f"edge {e} is not a pair")
            continue
        i, j = e
        if not (1 <= i <= graph.n and 1 <= j <= graph.n):
            problems.append(f"edge {e} has an endpoint outside 1..{graph.n}")
            continue
        if i == j:
            problems.append(f"edge {e} is a loop")
            continue
        if i > j:
            problems.append(f"edge {e} is not written with i < j")
        key = (min(i, j), max(i, j))
        if key in seen:
            problems.append(f"edge {key} appears more than once")
            continue
        seen.add(key)
        degree[i] += 1
        degree[j] += 1
    for v in graph.vertices:
        if degree[v] != 3:
            problems.append(f"vertex {v} has degree {degree[v]}")
    if graph.n % 2:
        problems.append(f"vertex count {graph.n} is odd")
    if not problems and len(graph.edges) != 3 * graph.n // 2:
        problems.append(f"expected {3 * graph.n // 2} edges, found {len(graph.edges)}")
    return problems


def validate_cubic(graph: CubicGraph) -> None:
    problems = cubic_violations(graph)
    if problems:
        raise GraphError("; ".join(problems))


@dataclass(frozen=True)
class EdgeOrder:
    edges: tuple[Edge, ...]
    # incident[v] lists v's three edges in global order: rank p is index p-1
    incident: dict[int, tuple[Edge, ...]]

    def rank(self, vertex: int, edge: Edge) -> int:
        return self.incident[vertex].index(edge) + 1


def order_edges(graph: CubicGraph) -> EdgeOrder:
    edges = tuple(sorted((min(e), max(e)) for e in graph.edges))
    incident: dict[int, list[Edge]] = {v: [] for v in graph.vertices}
    for e in edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    return EdgeOrder(edges, {v: tuple(es) for v, es in incident.items()})


# -- vertex cover --------------------------------------------------------------


def is_vertex_cover(graph: CubicGraph, cover: Iterable[int]) -> bool:
    cs = set(cover)
    return all(i in cs or j in cs for i, j in graph.edges)


def _matching_bound(edges: list[Edge]) -> int:
    used: set[int] = set()
    size = 0
    for i, j in edges:
        if i not in used and j not in used:
            used.update((i, j))
            size += 1
    return size


def vc_exact(graph: CubicGraph) -> frozenset[int]:
    """Minimum vertex cover by branching on ``v`` versus ``N(v)``.

    Among all minimum covers the lexicographically smallest sorted tuple is
    returned. Lower bound: size of a greedy maximal matching on the
    uncovered edges.
    """
    if graph.n > VC_EXACT_MAX_N:
        raise GraphError(f"vc_exact is limited to n <= {VC_EXACT_MAX_N}, got {graph.n}")
    best: list = [tuple(graph.vertices)]

    def better(cand: tuple[int, ...]) -> bool:
        inc = best[0]
        return len(cand) < len(inc) or (len(cand) == len(inc) and cand < inc)

    def search(edges: list[Edge], chosen: frozenset[int]) -> None:
        if not edges:
            cand = tuple(sorted(chosen))
            if better(cand):
                best[0] = cand
            return
        if len(chosen) + _matching_bound(edges) > len(best[0]):
            return
        degree: dict[int, int] = defaultdict(int)
        for i, j in edges:
            degree[i] += 1
            degree[j] += 1
        v = min(degree, key=lambda u: (-degree[u], u))
        nbrs = {j if i == v else i for i, j in edges if v in (i, j)}
        for take in ({v}, nbrs):
            rest = [e for e in edges if e[0] not in take and e[1] not in take]
            search(rest, chosen | take)

    search(sorted(graph.edges), frozenset())
    return frozenset(best[0])


def vc_approx_matching(graph: CubicGraph) -> frozenset[int]:
    """Both endpoints of a greedy maximal matching (edges in global order)."""
    cover: set[int] = set()
    for i, j in sorted(graph.edges):
        if i not in cover and j not in cover:
            cover.update((i, j))
    return frozenset(cover)


# -- generators ----------------------------------------------------------------


def gen_k4() -> CubicGraph:
    return CubicGraph(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))


def gen_k33() -> CubicGraph:
    return CubicGraph(6, tuple((i, j) for i in (1, 2, 3) for j in (4, 5, 6)))


def gen_prism() -> CubicGraph:
    return CubicGraph(6, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 6), (4, 5), (4, 6), (5, 6)))


def gen_petersen() -> CubicGraph:
    outer = [(k, k % 5 + 1) for k in range(1, 6)]
    spokes = [(k, k + 5) for k in range(1, 6)]
    inner = [(k + 5, (k + 1) % 5 + 6) for k in range(1, 6)]
    edges = sorted((min(e), max(e)) for e in outer + spokes + inner)
    return CubicGraph(10, tuple(edges))


def gen_random_cubic(n: int, seed: int) -> CubicGraph:
    """Union of three random perfect matchings, resampled until simple."""
    if n % 2 or n < 4:
        raise GraphError(f"random cubic graphs need an even n >= 4, got {n}")
    rng = random.Random(seed)
    verts = list(range(1, n + 1))
    for _ in range(RANDOM_CUBIC_ATTEMPTS):
        edges: set[Edge] = set()
        simple = True
        for _ in range(3):
            rng.shuffle(verts)
            for a, b in zip(verts[::2], verts[1::2]):
                e = (min(a, b), max(a, b))
                if e in edges:
                    simple = False
                    break
                edges.add(e)
            if not simple:
                break
        if simple:
            return CubicGraph(n, tuple(sorted(edges)))
    raise GraphError(f"no simple cubic graph after {RANDOM_CUBIC_ATTEMPTS} attempts")


# -- graph / cover files -------------------------------------------------------


def graph_to_dict(graph: CubicGraph) -> dict:
    return {"n": graph.n, "edges": [list(e) for e in sorted(graph.edges)]}


def render_graph(graph: CubicGraph) -> str:
    return json.dumps(graph_to_dict(graph)) + "\n"


def parse_graph(document: Union[bytes, str]) -> CubicGraph:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or not isinstance(
        doc.get("edges"), list
    ):
        raise GraphError('graph must be {"n": int, "edges": [[i, j], ...]}')
    edges = []
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise GraphError(f"malformed edge {e!r}")
        edges.append(tuple(e))
    return CubicGraph(doc["n"], tuple(edges))


def render_cover(cover: Iterable[int]) -> str:
    return json.dumps({"vertices": sorted(cover)}) + "\n"


def parse_cover(document: Union[bytes, str]) -> frozenset[int]:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphError(f"cover is not valid JSON: {exc}") from None
    verts = doc.get("vertices") if isinstance(doc, dict) else None
    if not isinstance(verts, list) or not all(isinstance(v, int) for v in verts):
        raise GraphError('cover must be {"vertices": [ints]}')
    return frozenset(verts)
