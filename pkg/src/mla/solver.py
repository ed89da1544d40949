"""Exact MLA search at desk scale.

Three solvers live here:

* :func:`solve_exact`: branch and bound over the unmatched cells, left to
  right, with an incremental cycle check.
* :func:`brute_force_oracle`: plain enumeration of every covering, used
  only to cross-check ``solve_exact`` on tiny instances.
* :func:`solve_block_relaxed`: all minimum-cost coverings of a single block
  with feasibility ignored; a lower bound on any feasible labeling's cost on
  that block.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .labeling import DupEvent, Event, Labeling, LossEvent, canonical, is_feasible, labeling_cost
from .model import AlignedPair, Genome, Interval, iter_runs, substring_occurrences, unmatched_runs

DESK_SCALE_UNMATCHED = 40
ORACLE_MAX_UNMATCHED = 20
RELAXED_MAX_UNMATCHED = 20


class SolverError(ValueError):
    pass


def _candidate_order(ev: Event) -> tuple:
    src = ev.source.start if isinstance(ev, DupEvent) else -1
    return (ev.target.start, len(ev.target), src)


@dataclass
class CandidateSet:
    genome: Genome
    candidates: list[Event] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    def starting_at(self, col: int) -> list[Event]:
        return [c for c in self.candidates if c.target.start == col]

    @property
    def max_dup_length(self) -> int:
        return max((len(c.target) for c in self.candidates if isinstance(c, DupEvent)), default=0)


def enumerate_candidates(pair: AlignedPair, genome: Genome) -> CandidateSet:
    """Every duplication (subinterval of a run x identical source) and every unit loss."""
    out: list[Event] = []
    for run in unmatched_runs(pair, genome):
        for a in run.columns():
            out.append(LossEvent(genome, Interval(a, a + 1)))
            for b in range(a + 1, run.end + 1):
                target = Interval(a, b)
                sources = substring_occurrences(pair, genome, target)
                if not sources:
                    # no longer target starting at a can have a source either
                    break
                out.extend(DupEvent(genome, target, s) for s in sources)
    out.sort(key=_candidate_order)
    return CandidateSet(genome, out)


@dataclass
class SolveResult:
    best: Labeling
    cost: int
    nodes_explored: int
    proven_optimal: bool


# -- branch and bound ------------------------------------------------------------


def _creates_cycle(active: list[DupEvent], new: DupEvent) -> bool:
    """Would adding ``new`` close a cycle? ``active`` is assumed acyclic."""
    if new.source.overlaps(new.target):
        return True
    pool = [d for d in active if d.genome is new.genome]
    stack = [new]
    seen: set[int] = set()
    while stack:
        cur = stack.pop()
        for k, d in enumerate(pool):
            if k in seen or not d.source.overlaps(cur.target):
                continue
            if new.source.overlaps(d.target):
                return True
            seen.add(k)
            stack.append(d)
    return False


def solve_exact(pair: AlignedPair, node_budget: int = 2_000_000) -> SolveResult:
    """Minimum-cost feasible labeling by branch and bound.

    Cells are covered left to right; at each node the first uncovered cell
    is branched on every candidate starting there, longest first. Bound:
    partial cost plus the larger of ``ceil(remaining / max_dup_length)`` and
    the feasibility-free DP minimum of the remaining cells. Equal-cost
    labelings are broken by the smallest serialized event list.
    """
    cells: list[tuple[Genome, int]] = []
    options: list[list[Event]] = []
    max_len = 1
    for genome in Genome:
        cands = enumerate_candidates(pair, genome)
        max_len = max(max_len, cands.max_dup_length)
        by_start: dict[int, list[Event]] = {}
        for c in cands:
            by_start.setdefault(c.target.start, []).append(c)
        for run in unmatched_runs(pair, genome):
            for col in run.columns():
                cells.append((genome, col))
                opts = by_start.get(col, [])
                opts.sort(key=lambda e: (-len(e.target), isinstance(e, LossEvent), _candidate_order(e)))
                options.append(opts)
    total = len(cells)
    if total > DESK_SCALE_UNMATCHED:
        raise SolverError(
            f"{total} unmatched columns exceed the desk-scale bound of {DESK_SCALE_UNMATCHED}"
        )

    relaxed = [0] * (total + 1)
    for idx in range(total - 1, -1, -1):
        relaxed[idx] = min(e.cost + relaxed[idx + len(e.target)] for e in options[idx])
    bound = [max(relaxed[i], math.ceil((total - i) / max_len)) for i in range(total + 1)]

    all_losses = canonical(LossEvent(g, Interval(c, c + 1)) for g, c in cells)
    best = {"labeling": all_losses, "cost": labeling_cost(all_losses), "key": all_losses.key()}
    nodes = 0
    exhausted = False
    chosen: list[Event] = []
    active: list[DupEvent] = []

    def search(idx: int, cost: int) -> None:
        nonlocal nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        if cost + bound[idx] > best["cost"]:
            return
        if idx == total:
            lab = canonical(chosen)
            key = lab.key()
            if (cost, key) < (best["cost"], best["key"]):
                best.update(labeling=lab, cost=cost, key=key)
            return
        for ev in options[idx]:
            if isinstance(ev, DupEvent):
                if _creates_cycle(active, ev):
                    continue
                active.append(ev)
            chosen.append(ev)
            search(idx + len(ev.target), cost + ev.cost)
            chosen.pop()
            if isinstance(ev, DupEvent):
                active.pop()

    search(0, 0)
    return SolveResult(best["labeling"], best["cost"], nodes, not exhausted)


# -- independent oracle ----------------------------------------------------------


def _compositions(length: int) -> Iterator[list[tuple[int, int]]]:
    """All ways to cut ``range(length)`` into consecutive pieces, as (offset, size)."""
    for mask in range(1 << max(length - 1, 0)):
        pieces, start = [], 0
        for k in range(1, length):
            if mask >> (k - 1) & 1:
                pieces.append((start, k - start))
                start = k
        pieces.append((start, length - start))
        yield pieces


def _naive_sources(pair: AlignedPair, genome: Genome, target: Interval) -> list[Interval]:
    row = pair.row(genome)
    word = row[target.start : target.end]
    n = len(word)
    return [
        Interval(s, s + n)
        for s in range(len(row) - n + 1)
        if s != target.start and None not in row[s : s + n] and row[s : s + n] == word
    ]


def brute_force_oracle(pair: AlignedPair) -> SolveResult:
    """Exhaustive minimum over every covering; no pruning."""
    for genome in Genome:
        k = len(pair.unmatched_columns(genome))
        if k > ORACLE_MAX_UNMATCHED:
            raise SolverError(f"oracle is capped at {ORACLE_MAX_UNMATCHED} unmatched columns, genome {genome.value} has {k}")
    per_run: list[list[list[Event]]] = []
    for genome, run in iter_runs(pair):
        choices: list[list[Event]] = []
        for pieces in _compositions(len(run)):
            per_piece = []
            for off, size in pieces:
                target = Interval(run.start + off, run.start + off + size)
                opts: list[Event] = [LossEvent(genome, target)]
                opts += [DupEvent(genome, target, s) for s in _naive_sources(pair, genome, target)]
                per_piece.append(opts)
            choices.extend(list(combo) for combo in itertools.product(*per_piece))
        per_run.append(choices)
    best: Optional[tuple[int, tuple, Labeling]] = None
    count = 0
    for combo in itertools.product(*per_run):
        count += 1
        events = [ev for part in combo for ev in part]
        if not is_feasible(events):
            continue
        lab = canonical(events)
        cand = (labeling_cost(lab), lab.key(), lab)
        if best is None or cand[:2] < best[:2]:
            best = cand
    assert best is not None  # all-loss labeling is always feasible
    return SolveResult(best[2], best[0], count, True)


# -- block relaxation ------------------------------------------------------------


def _block_runs(pair: AlignedPair, block: Interval) -> list[tuple[Genome, Interval]]:
    runs = []
    for genome, run in iter_runs(pair):
        if not run.overlaps(block):
            continue
        if not block.contains(run):
            raise SolverError(f"unmatched run {tuple(run)} crosses the block boundary {tuple(block)}")
        runs.append((genome, run))
    total = sum(len(r) for _, r in runs)
    if total > RELAXED_MAX_UNMATCHED:
        raise SolverError(f"block has {total} unmatched columns, limit is {RELAXED_MAX_UNMATCHED}")
    return runs


def _piece_options(pair: AlignedPair, genome: Genome, target: Interval) -> list[Event]:
    opts: list[Event] = []
    if len(target) == 1:
        opts.append(LossEvent(genome, target))
    opts += [DupEvent(genome, target, s) for s in substring_occurrences(pair, genome, target)]
    return opts


def solve_block_relaxed(pair: AlignedPair, block: Interval) -> tuple[int, list[Labeling]]:
    """Minimum cost and every minimum labeling of one block, ignoring feasibility.

    Losses are offered per column only (a loss of length k costs the same as
    k unit losses); returned labelings are canonical, so adjacent unit losses
    appear merged.
    """
    total_min = 0
    run_argmins: list[list[list[Event]]] = []
    for genome, run in _block_runs(pair, block):
        opts = {}
        for a in run.columns():
            for b in range(a + 1, run.end + 1):
                opts[a, b] = _piece_options(pair, genome, Interval(a, b))
        best, winners = math.inf, []
        for pieces in _compositions(len(run)):
            spans = [(run.start + off, run.start + off + size) for off, size in pieces]
            if any(not opts[s] for s in spans):
                continue
            # every option of a piece costs exactly 1
            cost = len(spans)
            if cost < best:
                best, winners = cost, [spans]
            elif cost == best:
                winners.append(spans)
        total_min += best
        labelings = []
        for spans in winners:
            labelings.extend(list(c) for c in itertools.product(*(opts[s] for s in spans)))
        run_argmins.append(labelings)
    seen: dict[tuple, Labeling] = {}
    for combo in itertools.product(*run_argmins):
        lab = canonical(ev for part in combo for ev in part)
        seen.setdefault(lab.key(), lab)
    return total_min, [seen[k] for k in sorted(seen)]


def iter_block_labelings(pair: AlignedPair, block: Interval) -> Iterator[Labeling]:
    """Every covering of the block's unmatched columns (feasibility ignored)."""
    per_run = []
    for genome, run in _block_runs(pair, block):
        choices = []
        for pieces in _compositions(len(run)):
            per_piece = [
                _piece_options(pair, genome, Interval(run.start + off, run.start + off + size))
                for off, size in pieces
            ]
            choices.extend(itertools.product(*per_piece))
        per_run.append(choices)
    for combo in itertools.product(*per_run):
        yield canonical(ev for part in combo for ev in part)
