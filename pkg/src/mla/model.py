"""Aligned genome pairs, column classes and substring queries.

Columns are addressed by 0-based half-open intervals ``[start, end)``.
A gap is stored as ``None`` in a row.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .tokens import GAP_TEXT, SymbolToken, TokenError, parse_token

Cell = Optional[SymbolToken]


class Genome(str, Enum):
    X = "X"
    Y = "Y"

    @property
    def other(self) -> "Genome":
        return Genome.Y if self is Genome.X else Genome.X


class ColumnClass(str, Enum):
    MATCH = "match"
    UNMATCHED_X = "unmatched-x"
    UNMATCHED_Y = "unmatched-y"


class Interval(NamedTuple):
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "Interval") -> bool:
        return self.start < other.end and other.start < self.end

    def contains(self, other: "Interval") -> bool:
        return self.start <= other.start and other.end <= self.end

    def columns(self) -> range:
        return range(self.start, self.end)

    def shift(self, offset: int) -> "Interval":
        return Interval(self.start + offset, self.end + offset)


class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class AlignedPair:
    row_x: tuple[Cell, ...]
    row_y: tuple[Cell, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_x", tuple(self.row_x))
        object.__setattr__(self, "row_y", tuple(self.row_y))
        if len(self.row_x) != len(self.row_y):
            raise AlignmentError(
                f"unequal row lengths: X has {len(self.row_x)}, Y has {len(self.row_y)}"
            )
        for col, (a, b) in enumerate(zip(self.row_x, self.row_y)):
            if a is None and b is None:
                raise AlignmentError(f"double-gap column {col}")
            if a is not None and b is not None and a != b:
                raise AlignmentError(f"mismatched non-gap column {col}")
        # first-token position index per genome, used by substring_occurrences
        index: dict[Genome, dict[SymbolToken, list[int]]] = {}
        for genome in Genome:
            positions: dict[SymbolToken, list[int]] = defaultdict(list)
            for col, tok in enumerate(self.row(genome)):
                if tok is not None:
                    positions[tok].append(col)
            index[genome] = dict(positions)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.row_x)

    @property
    def columns(self) -> int:
        return len(self.row_x)

    def row(self, genome: Genome) -> tuple[Cell, ...]:
        return self.row_x if genome is Genome.X else self.row_y

    def tokens(self, genome: Genome, interval: Interval) -> tuple[Cell, ...]:
        return self.row(genome)[interval.start : interval.end]

    def is_unmatched(self, genome: Genome, col: int) -> bool:
        return self.row(genome)[col] is not None and self.row(genome.other)[col] is None

    def unmatched_columns(self, genome: Genome) -> list[int]:
        return [c for c in range(len(self)) if self.is_unmatched(genome, c)]

    def gap_free(self, genome: Genome, interval: Interval) -> bool:
        row = self.row(genome)
        return all(row[c] is not None for c in interval.columns())


def classify_column(a: Cell, b: Cell) -> ColumnClass:
    if a is not None and b is not None:
        return ColumnClass.MATCH
    if a is not None:
        return ColumnClass.UNMATCHED_X
    return ColumnClass.UNMATCHED_Y


def classify_columns(pair: AlignedPair) -> list[ColumnClass]:
    return [classify_column(a, b) for a, b in zip(pair.row_x, pair.row_y)]


def unmatched_runs(pair: AlignedPair, genome: Genome) -> list[Interval]:
    """Maximal intervals of consecutive columns unmatched in ``genome``."""
    runs = []
    start = None
    for col in range(len(pair)):
        if pair.is_unmatched(genome, col):
            if start is None:
                start = col
        elif start is not None:
            runs.append(Interval(start, col))
            start = None
    if start is not None:
        runs.append(Interval(start, len(pair)))
    return runs


def substring_occurrences(pair: AlignedPair, genome: Genome, target: Interval) -> list[Interval]:
    """Every other gap-free interval of ``genome`` spelling the same tokens as ``target``.

    Occurrences that overlap ``target`` are included.
    """
    if len(target) == 0:
        raise AlignmentError("empty target interval")
    if not pair.gap_free(genome, target):
        bad = next(c for c in target.columns() if pair.row(genome)[c] is None)
        raise AlignmentError(f"target contains a gap column {bad} in genome {genome.value}")
    word = pair.tokens(genome, target)
    row = pair.row(genome)
    n = len(word)
    found = []
    for start in pair._index[genome].get(word[0], ()):
        if start == target.start or start + n > len(row):
            continue
        if row[start : start + n] == word:
            found.append(Interval(start, start + n))
    return found


def symbol_occurrence_counts(pair: AlignedPair) -> dict[SymbolToken, tuple[int, int]]:
    cx = Counter(t for t in pair.row_x if t is not None)
    cy = Counter(t for t in pair.row_y if t is not None)
    return {tok: (cx[tok], cy[tok]) for tok in sorted(set(cx) | set(cy))}


def iter_runs(pair: AlignedPair) -> Iterator[tuple[Genome, Interval]]:
    for genome in Genome:
        for run in unmatched_runs(pair, genome):
            yield genome, run


# -- instance file -----------------------------------------------------------


def _parse_cell(text: object, row: str, col: int) -> Cell:
    if not isinstance(text, str):
        raise AlignmentError(f"malformed token at row {row} column {col}: {text!r}")
    if text == GAP_TEXT:
        return None
    try:
        return parse_token(text)
    except TokenError as exc:
        raise AlignmentError(f"malformed token at row {row} column {col}: {exc}") from None


def alignment_from_dict(doc: dict) -> AlignedPair:
    if not isinstance(doc, dict) or "rowX" not in doc or "rowY" not in doc:
        raise AlignmentError("instance must be an object with rowX and rowY")
    row_x, row_y = doc["rowX"], doc["rowY"]
    if not isinstance(row_x, list) or not isinstance(row_y, list):
        raise AlignmentError("rowX and rowY must be arrays")
    xs = [_parse_cell(t, "X", c) for c, t in enumerate(row_x)]
    ys = [_parse_cell(t, "Y", c) for c, t in enumerate(row_y)]
    pair = AlignedPair(xs, ys)
    if "columns" in doc and doc["columns"] != len(pair):
        raise AlignmentError(f"columns field says {doc['columns']}, rows have {len(pair)}")
    return pair


def parse_alignment(document: Union[bytes, str]) -> AlignedPair:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise AlignmentError(f"instance is not valid JSON: {exc}") from None
    return alignment_from_dict(doc)


def alignment_to_dict(pair: AlignedPair) -> dict:
    def render(row: Sequence[Cell]) -> list[str]:
        return [GAP_TEXT if t is None else t.render() for t in row]

    return {"columns": len(pair), "rowX": render(pair.row_x), "rowY": render(pair.row_y)}


def render_alignment(pair: AlignedPair) -> str:
    return json.dumps(alignment_to_dict(pair)) + "\n"
