"""Vertex cover on cubic graphs -> aligned genome pair.

Layout of the alignment, left to right::

    VE(v_1) .. VE(v_n)  VE(e_first) .. VE(e_last)  A1(v_1) A2(v_1) .. A1(v_n) A2(v_n)

Every X column in the VE-part holds a symbol; Y keeps only the separators
``s_i`` / ``s_{e,i,j}`` there. The A-part is identical in both rows.

Block names and anchors (all intervals are absolute alignment columns):

* ``X-VE:v:<i>`` (18 columns): ``z:<2k-1>-<2k>`` for k=1..4, ``z:1``, ``z:8``,
  ``enc:e:<a>:<b>`` for each incident edge (the vertex's own encoding triple),
  ``b:<k>`` for k=1..6 (the two-piece split targets, see ``a2src``).
* ``X-VE:e:<i>:<j>`` (5 columns): ``i-enc`` (columns 1-3), ``j-enc``
  (columns 2-4), ``x:i`` (column 1), ``x:j`` (column 4).
* ``A1:v:<i>`` (12 columns): ``z:<2k-1>-<2k>`` for k=1..4.
* ``A2:v:<i>`` (21 columns): ``a2src:<k>`` for k=1..6, spelling
  ``z2 enc1[l]``, ``enc1[r] z3``, ``z4 enc2[l]``, ``enc2[r] z5``,
  ``z6 enc3[l]``, ``enc3[r] z7``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .graph import CubicGraph, Edge, EdgeOrder, order_edges, validate_cubic
from .model import AlignedPair, Cell, Interval
from .tokens import SymbolToken, esep, esym, usym, vsep, wsym, xsym, zsym

VERTEX_BLOCK_LEN = 18
EDGE_BLOCK_LEN = 5
A1_LEN = 12
A2_LEN = 21


@dataclass(frozen=True)
class Encoding:
    """The two encodings of edge ``{v_i, v_j}`` (``i < j``)."""

    i_enc: tuple[SymbolToken, ...]
    j_enc: tuple[SymbolToken, ...]
    i_split: int = 1  # i_enc[l] = i_enc[:1]
    j_split: int = 2  # j_enc[l] = j_enc[:2]

    def left(self, which: str) -> tuple[SymbolToken, ...]:
        return self.i_enc[: self.i_split] if which == "i" else self.j_enc[: self.j_split]

    def right(self, which: str) -> tuple[SymbolToken, ...]:
        return self.i_enc[self.i_split :] if which == "i" else self.j_enc[self.j_split :]


def encode_edge(edge: Edge, order: EdgeOrder) -> Encoding:
    i, j = edge
    p, q = order.rank(i, edge), order.rank(j, edge)
    e1, e2 = esym(i, j, 1), esym(i, j, 2)
    return Encoding((xsym(i, p), e1, e2), (e1, e2, xsym(j, q)))


def _side(vertex: int, edge: Edge) -> str:
    return "i" if vertex == edge[0] else "j"


def vertex_encodings(vertex: int, order: EdgeOrder) -> list[tuple[Edge, str, Encoding]]:
    return [(e, _side(vertex, e), encode_edge(e, order)) for e in order.incident[vertex]]


def build_edge_block(edge: Edge, order: EdgeOrder) -> tuple[list[Cell], list[Cell]]:
    i, j = edge
    enc = encode_edge(edge, order)
    x = [esep(i, j), *enc.i_enc, enc.j_enc[-1]]
    return x, [esep(i, j)] + [None] * 4


def build_vertex_block(vertex: int, order: EdgeOrder) -> tuple[list[Cell], list[Cell]]:
    x: list[Cell] = [vsep(vertex), zsym(vertex, 1), zsym(vertex, 2)]
    for k, (_, side, enc) in enumerate(vertex_encodings(vertex, order)):
        x.extend(enc.i_enc if side == "i" else enc.j_enc)
        x.extend((zsym(vertex, 2 * k + 3), zsym(vertex, 2 * k + 4)))
    return x, [vsep(vertex)] + [None] * (len(x) - 1)


def build_aux_blocks(vertex: int, order: EdgeOrder) -> tuple[list[Cell], list[Cell]]:
    """A1 and A2 token rows (identical in X and Y)."""
    a1: list[Cell] = []
    for k in range(1, 5):
        a1 += [wsym(vertex, k), zsym(vertex, 2 * k - 1), zsym(vertex, 2 * k)]
    a2: list[Cell] = []
    for k, (_, side, enc) in enumerate(vertex_encodings(vertex, order)):
        a2 += [usym(vertex, 2 * k + 1), zsym(vertex, 2 * k + 2), *enc.left(side)]
        a2 += [usym(vertex, 2 * k + 2), *enc.right(side), zsym(vertex, 2 * k + 3)]
    return a1, a2


@dataclass
class Block:
    name: str
    interval: Interval
    anchors: dict[str, Interval] = field(default_factory=dict)


@dataclass
class BlockMap:
    blocks: list[Block]

    def __post_init__(self) -> None:
        self._by_name = {b.name: b for b in self.blocks}

    def __getitem__(self, name: str) -> Block:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def vertex(self, v: int) -> Block:
        return self._by_name[vertex_block_name(v)]

    def edge(self, e: Edge) -> Block:
        return self._by_name[edge_block_name(e)]

    def a1(self, v: int) -> Block:
        return self._by_name[f"A1:v:{v}"]

    def a2(self, v: int) -> Block:
        return self._by_name[f"A2:v:{v}"]

    def block_of(self, col: int) -> Block:
        for b in self.blocks:
            if b.interval.start <= col < b.interval.end:
                return b
        raise KeyError(col)

    def to_dict(self) -> dict:
        return {
            "blocks": [
                {
                    "name": b.name,
                    "interval": list(b.interval),
                    "anchors": {k: list(v) for k, v in b.anchors.items()},
                }
                for b in self.blocks
            ]
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "BlockMap":
        return cls(
            [
                Block(
                    b["name"],
                    Interval(*b["interval"]),
                    {k: Interval(*v) for k, v in b["anchors"].items()},
                )
                for b in doc["blocks"]
            ]
        )


def vertex_block_name(v: int) -> str:
    return f"X-VE:v:{v}"


def edge_block_name(e: Edge) -> str:
    return f"X-VE:e:{e[0]}:{e[1]}"


def enc_anchor(e: Edge) -> str:
    return f"enc:e:{e[0]}:{e[1]}"


def render_blockmap(bm: BlockMap) -> str:
    return json.dumps(bm.to_dict()) + "\n"


def parse_blockmap(document: Union[bytes, str]) -> BlockMap:
    return BlockMap.from_dict(json.loads(document))


def _vertex_anchors(vertex: int, order: EdgeOrder, start: int) -> dict[str, Interval]:
    def at(offset: int, length: int) -> Interval:
        return Interval(start + offset, start + offset + length)

    anchors = {f"z:{2 * k - 1}-{2 * k}": at(1 + 5 * (k - 1), 2) for k in range(1, 5)}
    anchors["z:1"] = at(1, 1)
    anchors["z:8"] = at(17, 1)
    for k, (edge, side, enc) in enumerate(vertex_encodings(vertex, order)):
        enc_at = 3 + 5 * k
        anchors[enc_anchor(edge)] = at(enc_at, 3)
        nl = len(enc.left(side))
        anchors[f"b:{2 * k + 1}"] = at(enc_at - 1, 1 + nl)
        anchors[f"b:{2 * k + 2}"] = at(enc_at + nl, 3 - nl + 1)
    return anchors


def _a2_anchors(vertex: int, order: EdgeOrder, start: int) -> dict[str, Interval]:
    anchors = {}
    pos = start
    for k, (_, side, enc) in enumerate(vertex_encodings(vertex, order)):
        nl, nr = len(enc.left(side)), len(enc.right(side))
        anchors[f"a2src:{2 * k + 1}"] = Interval(pos + 1, pos + 2 + nl)
        pos += 2 + nl
        anchors[f"a2src:{2 * k + 2}"] = Interval(pos + 1, pos + 2 + nr)
        pos += 2 + nr
    return anchors


def reduce_graph(graph: CubicGraph) -> tuple[AlignedPair, BlockMap]:
    validate_cubic(graph)
    order = order_edges(graph)
    row_x: list[Cell] = []
    row_y: list[Cell] = []
    blocks: list[Block] = []

    def emit(name: str, xs: list[Cell], ys: list[Cell], anchors=None) -> int:
        start = len(row_x)
        row_x.extend(xs)
        row_y.extend(ys)
        blocks.append(Block(name, Interval(start, len(row_x)), anchors or {}))
        return start

    for v in graph.vertices:
        xs, ys = build_vertex_block(v, order)
        start = len(row_x)
        emit(vertex_block_name(v), xs, ys, _vertex_anchors(v, order, start))
    for e in order.edges:
        xs, ys = build_edge_block(e, order)
        start = len(row_x)
        emit(
            edge_block_name(e),
            xs,
            ys,
            {
                "i-enc": Interval(start + 1, start + 4),
                "j-enc": Interval(start + 2, start + 5),
                "x:i": Interval(start + 1, start + 2),
                "x:j": Interval(start + 4, start + 5),
            },
        )
    for v in graph.vertices:
        a1, a2 = build_aux_blocks(v, order)
        start = len(row_x)
        emit(
            f"A1:v:{v}",
            a1,
            list(a1),
            {f"z:{2 * k - 1}-{2 * k}": Interval(start + 3 * k - 2, start + 3 * k) for k in range(1, 5)},
        )
        start = len(row_x)
        emit(f"A2:v:{v}", a2, list(a2), _a2_anchors(v, order, start))
    return AlignedPair(row_x, row_y), BlockMap(blocks)


def expected_columns(n: int) -> int:
    return VERTEX_BLOCK_LEN * n + EDGE_BLOCK_LEN * (3 * n // 2) + (A1_LEN + A2_LEN) * n


def restrict_to_block(pair: AlignedPair, interval: Interval) -> AlignedPair:
    """Copy of ``pair`` where every unmatched column outside ``interval`` is matched.

    Gives the sub-instance in which only the chosen block needs a labeling,
    while every other token stays available as a duplication source.
    """
    xs, ys = list(pair.row_x), list(pair.row_y)
    for col in range(len(pair)):
        if interval.start <= col < interval.end:
            continue
        if xs[col] is None:
            xs[col] = ys[col]
        elif ys[col] is None:
            ys[col] = xs[col]
    return AlignedPair(xs, ys)
