"""Acceptance criteria A1-A9, one PASS/FAIL line each (run with ``-s`` or not)."""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from mla.graph import (
    gen_k33,
    gen_k4,
    gen_petersen,
    gen_prism,
    gen_random_cubic,
    is_vertex_cover,
    order_edges,
    vc_approx_matching,
    vc_exact,
)
from mla.labeling import DupEvent, canonical, is_feasible, labeling_cost, validate_cover
from mla.mapping import (
    cover_to_labeling,
    labeling_to_cover,
    cover_labeling_cost,
    lreduction_report,
    normalize_labeling,
    optimum_certificate,
    type_a_labeling,
)
from mla.model import symbol_occurrence_counts
from mla.reduction import reduce_graph
from mla.solver import brute_force_oracle, iter_block_labelings, solve_block_relaxed, solve_exact

from _instances import random_tiny_pair, rewrite_blocks_as_losses


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(name, limit):
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert elapsed < limit, f"{name} took {elapsed:.2f}s, limit {limit}s"
            status = "PASS"
        finally:
            with capsys.disabled():
                print(f"\n{name} {status} ({time.perf_counter() - t0:.2f}s, limit {limit}s)")
    return run


def spell(cells):
    return " ".join("-" if c is None else c.render() for c in cells)


def random_graphs(count=20):
    sizes = [4, 6, 8, 10]
    return [gen_random_cubic(sizes[s % 4], 1000 + s) for s in range(count)]


def test_a1_construction_golden(criterion):
    with criterion("A1", 1.0):
        pair, bm = reduce_graph(gen_k4())
        assert len(pair) == 234

        def block(b):
            return spell(pair.row_x[b.interval.start:b.interval.end])

        assert block(bm.edge((1, 2))) == "s:e:1:2 x:1:1 e:1:2:1 e:1:2:2 x:2:1"
        assert block(bm.vertex(1)) == (
            "s:v:1 z:1:1 z:1:2 x:1:1 e:1:2:1 e:1:2:2 z:1:3 z:1:4 x:1:2 e:1:3:1 e:1:3:2 "
            "z:1:5 z:1:6 x:1:3 e:1:4:1 e:1:4:2 z:1:7 z:1:8"
        )
        assert block(bm.a2(1)) == (
            "u:1:1 z:1:2 x:1:1 u:1:2 e:1:2:1 e:1:2:2 z:1:3 u:1:3 z:1:4 x:1:2 u:1:4 "
            "e:1:3:1 e:1:3:2 z:1:5 u:1:5 z:1:6 x:1:3 u:1:6 e:1:4:1 e:1:4:2 z:1:7"
        )
        # second endpoint embeds e e x: the triple a j-side copy needs
        assert block(bm.vertex(2)).split()[3:6] == ["e:1:2:1", "e:1:2:2", "x:2:1"]


def test_a2_occurrence_bound(criterion):
    with criterion("A2", 5.0):
        for graph in random_graphs(20):
            pair, _ = reduce_graph(graph)
            assert max(max(c) for c in symbol_occurrence_counts(pair).values()) <= 5


def test_a3_vertex_blocks(criterion):
    with criterion("A3", 60.0):
        for graph in [gen_k4(), gen_random_cubic(6, 1), gen_random_cubic(6, 2)]:
            pair, bm = reduce_graph(graph)
            for v in graph.vertices:
                lo, argmins = solve_block_relaxed(pair, bm.vertex(v).interval)
                assert lo == 7, (graph, v, lo)
                assert [a.key() for a in argmins] == [canonical(type_a_labeling(v, bm)).key()]


def test_a4_edge_blocks(criterion):
    with criterion("A4", 5.0):
        for graph in [gen_k4(), gen_k33(), gen_random_cubic(6, 1), gen_random_cubic(6, 2)]:
            pair, bm = reduce_graph(graph)
            for e in order_edges(graph).edges:
                lo, argmins = solve_block_relaxed(pair, bm.edge(e).interval)
                assert lo == 2 and argmins
                ends = [bm.vertex(v).interval for v in e]
                for lab in argmins:
                    assert any(isinstance(ev, DupEvent) and any(b.contains(ev.source) for b in ends)
                               for ev in lab.events), (e, lab)


def _covers(graph, rng):
    exact = vc_exact(graph)
    covers = {exact, vc_approx_matching(graph), frozenset(graph.vertices)}
    extra = [v for v in graph.vertices if v not in exact]
    covers.add(exact | frozenset(rng.sample(extra, len(extra) // 2)))
    return sorted(covers, key=sorted)


def test_a5_cover_to_labeling(criterion):
    rng = random.Random(5)
    with criterion("A5", 5.0):
        for graph in [gen_k4(), gen_k33(), gen_prism(), gen_petersen(), *random_graphs(8)]:
            pair, bm = reduce_graph(graph)
            for cover in _covers(graph, rng):
                lab = cover_to_labeling(graph, cover, pair, bm)
                assert validate_cover(pair, lab) is None and is_feasible(lab)
                assert labeling_cost(lab) == 8 * len(cover) + 7 * (graph.n - len(cover)) + 2 * len(graph.edges)


def _suboptimal_edges(graph, pair, bm, lab, rng):
    """Relabel every edge block with a random costlier covering that keeps the labeling feasible."""
    events = list(lab.events)
    for e in order_edges(graph).edges:
        block = bm.edge(e).interval
        rest = [ev for ev in events if not block.contains(ev.target)]
        options = [c for c in iter_block_labelings(pair, block) if labeling_cost(c) > 2]
        rng.shuffle(options)
        for c in options:
            if is_feasible(rest + list(c.events)):
                events = rest + list(c.events)
                break
    return canonical(events)


def _check_backward(graph, pair, bm, bad):
    assert validate_cover(pair, bad) is None and is_feasible(bad)
    norm = normalize_labeling(graph, pair, bm, bad)
    assert validate_cover(pair, norm) is None and is_feasible(norm)
    assert labeling_cost(norm) <= labeling_cost(bad)
    cover = labeling_to_cover(graph, pair, bm, bad)
    assert is_vertex_cover(graph, cover)
    assert labeling_cost(norm) == len(cover) + 10 * graph.n
    return cover


def test_a6_labeling_to_cover(criterion):
    rng = random.Random(6)
    with criterion("A6", 30.0):
        for graph in [gen_k4(), gen_k33(), gen_petersen(), *random_graphs(8)]:
            pair, bm = reduce_graph(graph)
            for cover in _covers(graph, rng):
                lab = cover_to_labeling(graph, cover, pair, bm)
                assert len(_check_backward(graph, pair, bm, lab)) <= len(cover)
                # cover blocks rewritten to losses
                lost = rewrite_blocks_as_losses(pair, lab, [bm.vertex(v).interval for v in cover])
                assert len(_check_backward(graph, pair, bm, lost)) <= len(cover)
                # edges relabeled with costlier coverings
                sub = _suboptimal_edges(graph, pair, bm, lab, rng)
                assert labeling_cost(sub) > labeling_cost(lab)
                assert len(_check_backward(graph, pair, bm, sub)) <= len(cover)
                # both at once
                both = _suboptimal_edges(graph, pair, bm, lost, rng)
                assert len(_check_backward(graph, pair, bm, both)) <= len(cover)
            # every vertex block cost-7 and every edge block lost: normalization must flip endpoints
            events = [ev for v in graph.vertices for ev in type_a_labeling(v, bm)]
            flat = rewrite_blocks_as_losses(pair, canonical(events), [bm.edge(e).interval for e in graph.edges])
            _check_backward(graph, pair, bm, flat)


@pytest.mark.parametrize("label,gen,want", [("K4", gen_k4, 43), ("K33", gen_k33, 63)])
def test_a7_optimum_identity(criterion, label, gen, want):
    with criterion(f"A7 {label}", 60.0):
        graph = gen()
        cert = optimum_certificate(graph)
        assert cert.lower == cert.upper == want == cert.tau + 10 * graph.n


def test_a8_solver_oracle(criterion):
    with criterion("A8", 60.0):
        for seed in range(200):
            pair = random_tiny_pair(seed)
            assert len(pair) <= 12
            exact, oracle = solve_exact(pair), brute_force_oracle(pair)
            assert exact.proven_optimal and exact.cost == oracle.cost, seed


def test_a9_arithmetic(criterion):
    with criterion("A9", 5.0):
        graphs = [gen_k4(), gen_k33(), gen_prism(), gen_petersen(), *random_graphs(20)]
        graphs += [gen_random_cubic(n, s) for n, s in itertools.product([12, 14, 16], range(3))]
        for graph in graphs:
            rep = lreduction_report(graph)
            assert 2 * len(graph.edges) == 3 * graph.n
            assert 4 * len(vc_exact(graph)) >= graph.n
            assert rep.apx_bound_ok and rep.opt_cost <= 41 * rep.tau
            assert rep.opt_cost == cover_labeling_cost(graph.n, len(graph.edges), rep.tau)
