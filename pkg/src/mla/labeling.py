"""Duplication/loss labelings: coverage, maximality, feasibility and cost.

A duplication ``d`` depends on a duplication ``d'`` when the source of ``d``
overlaps the target of ``d'`` (``d`` copies material that ``d'`` explains).
A labeling is feasible when this relation has no cycle. A duplication whose
source overlaps its own target is a self-loop and therefore infeasible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Optional, Sequence, Union

from .model import AlignedPair, Genome, Interval


@dataclass(frozen=True)
class DupEvent:
    genome: Genome
    target: Interval
    source: Interval

    kind = "dup"

    @property
    def cost(self) -> int:
        return 1


@dataclass(frozen=True)
class LossEvent:
    genome: Genome
    target: Interval

    kind = "loss"

    @property
    def cost(self) -> int:
        return len(self.target)


Event = Union[DupEvent, LossEvent]


def event_key(ev: Event) -> tuple:
    """Sort key matching the serialized field order."""
    src = (ev.source.start, ev.source.end) if isinstance(ev, DupEvent) else ()
    return (ev.genome.value, ev.target.start, ev.target.end, ev.kind, src)


@dataclass(frozen=True)
class Labeling:
    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    @property
    def dups(self) -> list[DupEvent]:
        return [e for e in self.events if isinstance(e, DupEvent)]

    @property
    def losses(self) -> list[LossEvent]:
        return [e for e in self.events if isinstance(e, LossEvent)]

    def key(self) -> tuple:
        return tuple(event_key(e) for e in self.events)


def canonical(events: Iterable[Event]) -> Labeling:
    """Sort events and merge adjacent losses into maximal loss intervals."""
    ordered = sorted(events, key=event_key)
    out: list[Event] = []
    for ev in ordered:
        prev = out[-1] if out else None
        if (
            isinstance(ev, LossEvent)
            and isinstance(prev, LossEvent)
            and prev.genome is ev.genome
            and prev.target.end == ev.target.start
        ):
            out[-1] = LossEvent(ev.genome, Interval(prev.target.start, ev.target.end))
        else:
            out.append(ev)
    return Labeling(tuple(out))


@dataclass(frozen=True)
class Violation:
    message: str
    event_index: Optional[int] = None
    column: Optional[int] = None

    def __str__(self) -> str:
        where = []
        if self.event_index is not None:
            where.append(f"event {self.event_index}")
        if self.column is not None:
            where.append(f"column {self.column}")
        return f"{self.message} ({', '.join(where)})" if where else self.message


def _event_violation(pair: AlignedPair, ev: Event, idx: int) -> Optional[Violation]:
    m = len(pair)
    for name, iv in [("target", ev.target)] + (
        [("source", ev.source)] if isinstance(ev, DupEvent) else []
    ):
        if not (0 <= iv.start < iv.end <= m):
            return Violation(f"{name} interval {tuple(iv)} out of range", idx)
        for col in iv.columns():
            if pair.row(ev.genome)[col] is None:
                return Violation(f"{name} contains a gap", idx, col)
    for col in ev.target.columns():
        if not pair.is_unmatched(ev.genome, col):
            return Violation("target covers a matched column", idx, col)
    if isinstance(ev, DupEvent):
        if ev.source == ev.target:
            return Violation("source equals target", idx, ev.target.start)
        if pair.tokens(ev.genome, ev.source) != pair.tokens(ev.genome, ev.target):
            return Violation("source and target spell different tokens", idx, ev.target.start)
    return None


def validate_cover(pair: AlignedPair, labeling: Labeling) -> Optional[Violation]:
    """Return the first problem with ``labeling`` as a cover of ``pair``, or None."""
    owner: dict[tuple[Genome, int], int] = {}
    for idx, ev in enumerate(labeling.events):
        bad = _event_violation(pair, ev, idx)
        if bad is not None:
            return bad
        for col in ev.target.columns():
            if (ev.genome, col) in owner:
                return Violation(
                    f"column already covered by event {owner[ev.genome, col]}", idx, col
                )
            owner[ev.genome, col] = idx
    for genome in Genome:
        for col in pair.unmatched_columns(genome):
            if (genome, col) not in owner:
                return Violation(f"uncovered column in genome {genome.value}", None, col)
    return None


def is_maximal_dup(pair: AlignedPair, event: DupEvent) -> bool:
    """True when neither end of the duplication can be extended.

    A neighbour that is a gap or lies past the end of the alignment counts
    as a non-existent character.
    """
    row = pair.row(event.genome)

    def cell(col: int):
        return row[col] if 0 <= col < len(row) else None

    left_t, left_s = cell(event.target.start - 1), cell(event.source.start - 1)
    right_t, right_s = cell(event.target.end), cell(event.source.end)
    left_open = left_t is not None and left_t == left_s
    right_open = right_t is not None and right_t == right_s
    return not (left_open or right_open)


def dependency_digraph(labeling: Labeling | Sequence[Event]) -> dict[int, set[int]]:
    """Arcs between duplication events, keyed by index into the event list.

    ``d -> d2`` when both share a genome and ``source(d2)`` overlaps ``target(d)``.
    """
    events = labeling.events if isinstance(labeling, Labeling) else tuple(labeling)
    dups = [(i, e) for i, e in enumerate(events) if isinstance(e, DupEvent)]
    arcs: dict[int, set[int]] = {i: set() for i, _ in dups}
    for i, d in dups:
        for j, d2 in dups:
            if d.genome is d2.genome and d2.source.overlaps(d.target):
                arcs[i].add(j)
    return arcs


def is_feasible(labeling: Labeling | Sequence[Event]) -> bool:
    arcs = dependency_digraph(labeling)
    if any(i in succ for i, succ in arcs.items()):
        return False
    try:
        tuple(TopologicalSorter(arcs).static_order())
    except CycleError:
        return False
    return True


def labeling_cost(labeling: Labeling | Iterable[Event]) -> int:
    return sum(e.cost for e in labeling)


# -- labeling file -----------------------------------------------------------


class LabelingFormatError(ValueError):
    pass


def labeling_to_dict(labeling: Labeling) -> dict:
    out = []
    for ev in labeling.events:
        item = {"genome": ev.genome.value, "kind": ev.kind, "target": list(ev.target)}
        if isinstance(ev, DupEvent):
            item["source"] = list(ev.source)
        out.append(item)
    return {"events": out}


def render_labeling(labeling: Labeling) -> str:
    return json.dumps(labeling_to_dict(labeling)) + "\n"


def _interval(value: object, idx: int, name: str) -> Interval:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise LabelingFormatError(f"event {idx}: {name} must be [start, end]")
    return Interval(*value)


def labeling_from_dict(doc: dict) -> Labeling:
    if not isinstance(doc, dict) or not isinstance(doc.get("events"), list):
        raise LabelingFormatError("labeling must be an object with an events array")
    events: list[Event] = []
    for idx, item in enumerate(doc["events"]):
        if not isinstance(item, dict):
            raise LabelingFormatError(f"event {idx}: not an object")
        try:
            genome = Genome(item.get("genome"))
        except ValueError:
            raise LabelingFormatError(f"event {idx}: genome must be X or Y") from None
        target = _interval(item.get("target"), idx, "target")
        kind = item.get("kind")
        if kind == "dup":
            events.append(DupEvent(genome, target, _interval(item.get("source"), idx, "source")))
        elif kind == "loss":
            events.append(LossEvent(genome, target))
        else:
            raise LabelingFormatError(f"event {idx}: kind must be dup or loss")
    return Labeling(tuple(events))


def parse_labeling(document: Union[bytes, str]) -> Labeling:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise LabelingFormatError(f"labeling is not valid JSON: {exc}") from None
    return labeling_from_dict(doc)
