import pytest
from hypothesis import given, strategies as st

from mla.labeling import (
    DupEvent,
    Labeling,
    LabelingFormatError,
    LossEvent,
    canonical,
    dependency_digraph,
    is_feasible,
    is_maximal_dup,
    labeling_cost,
    labeling_to_dict,
    labeling_from_dict,
    parse_labeling,
    render_labeling,
    validate_cover,
)
from mla.mapping import cover_to_labeling, type_a_labeling, type_b_labeling
from mla.model import Genome, Interval

from _instances import pair_from_strings

X, Y = Genome.X, Genome.Y
I = Interval


def dup(t, s, g=X):
    return DupEvent(g, I(*t), I(*s))


def loss(t, g=X):
    return LossEvent(g, I(*t))


def test_empty_labeling_of_matched_pair():
    pair = pair_from_strings("a b", "a b")
    assert validate_cover(pair, Labeling()) is None
    assert is_feasible(Labeling()) and labeling_cost(Labeling()) == 0


def test_uncovered_column():
    pair = pair_from_strings("a b", "a -")
    bad = validate_cover(pair, Labeling())
    assert bad is not None and "uncovered column" in bad.message and bad.column == 1


@pytest.mark.parametrize(
    "events, fragment",
    [
        ([loss((0, 2))], "matched column"),
        ([loss((1, 2)), loss((1, 2))], "already covered"),
        ([dup((1, 2), (1, 2))], "source equals target"),
        ([dup((1, 2), (0, 1))], "different tokens"),
        ([dup((1, 2), (5, 6))], "out of range"),
        ([loss((1, 2), Y)], "gap"),
    ],
)
def test_cover_violations(events, fragment):
    pair = pair_from_strings("a b c b", "a - c b")
    bad = validate_cover(pair, Labeling(events))
    assert bad is not None and fragment in bad.message
    assert bad.event_index is not None


def test_type_a_block_validates_on_its_own_columns(k4):
    _, pair, bm = k4
    events = type_a_labeling(1, bm)
    covered = sorted(c for ev in events for c in ev.target.columns())
    assert covered == list(range(bm.vertex(1).interval.start + 1, bm.vertex(1).interval.end))
    assert len(events) == 7 and labeling_cost(events) == 7


def test_maximality_k4(k4):
    _, pair, bm = k4
    d = DupEvent(X, bm.vertex(1).anchors["z:1-2"], bm.a1(1).anchors["z:1-2"])
    assert is_maximal_dup(pair, d)
    shrunk = DupEvent(X, I(d.target.start, d.target.start + 1), I(d.source.start, d.source.start + 1))
    assert not is_maximal_dup(pair, shrunk)


def test_maximality_plain():
    pair = pair_from_strings("a b a c", "a b - c")
    assert is_maximal_dup(pair, dup((2, 3), (0, 1)))


def test_digraph_examples():
    assert dependency_digraph([dup((0, 2), (4, 6)), dup((10, 12), (14, 16))]) == {0: set(), 1: set()}
    two_cycle = [dup((5, 7), (0, 2)), dup((0, 2), (5, 7))]
    assert dependency_digraph(two_cycle) == {0: {1}, 1: {0}}
    assert not is_feasible(two_cycle)


def test_digraph_ignores_other_genome():
    assert is_feasible([dup((5, 7), (0, 2), X), dup((0, 2), (5, 7), Y)])


def test_three_cycle_and_self_loop():
    assert not is_feasible([dup((0, 1), (2, 3)), dup((2, 3), (4, 5)), dup((4, 5), (0, 1))])
    assert is_feasible([dup((0, 1), (2, 3)), dup((2, 3), (4, 5))])
    assert not is_feasible([dup((1, 3), (0, 2))])


def test_cover_to_labeling_has_no_arc_into_dups_sourced_outside_targets(k4):
    graph, pair, bm = k4
    lab = cover_to_labeling(graph, {1, 2, 3}, pair, bm)
    arcs = dependency_digraph(lab)
    targets = [ev.target for ev in lab.events]
    for j, ev in enumerate(lab.events):
        if isinstance(ev, DupEvent) and not any(ev.source.overlaps(t) for t in targets):
            assert all(j not in succ for succ in arcs.values())
    assert is_feasible(lab)


def test_costs(k4):
    _, _, bm = k4
    assert labeling_cost(type_a_labeling(1, bm)) == 7
    b = type_b_labeling(1, bm)
    assert labeling_cost(b) == 8
    assert sum(isinstance(e, DupEvent) for e in b) == 6 and sum(isinstance(e, LossEvent) for e in b) == 2
    assert labeling_cost([loss((0, 3)), dup((3, 4), (9, 10))]) == 4


intervals = st.tuples(st.integers(0, 12), st.integers(1, 4)).map(lambda t: I(t[0], t[0] + t[1]))
events = st.one_of(
    st.builds(DupEvent, st.sampled_from([X, Y]), intervals, intervals),
    st.builds(LossEvent, st.sampled_from([X, Y]), intervals),
)


@given(st.lists(events, max_size=8), st.data())
def test_removing_events_keeps_feasibility(evs, data):
    if not is_feasible(evs):
        return
    keep = data.draw(st.lists(st.booleans(), min_size=len(evs), max_size=len(evs)))
    assert is_feasible([e for e, k in zip(evs, keep) if k])


@given(st.lists(events, max_size=8), st.data())
def test_cost_is_additive(evs, data):
    split = data.draw(st.integers(0, len(evs)))
    assert labeling_cost(evs) == labeling_cost(evs[:split]) + labeling_cost(evs[split:])


@given(st.lists(events, max_size=8))
def test_labeling_file_round_trip(evs):
    lab = Labeling(evs)
    assert parse_labeling(render_labeling(lab)) == lab
    assert labeling_from_dict(labeling_to_dict(lab)) == lab


def test_canonical_merges_adjacent_losses():
    lab = canonical([loss((3, 4)), loss((1, 2)), loss((2, 3)), dup((5, 6), (0, 1))])
    assert lab.events == (loss((1, 4)), dup((5, 6), (0, 1)))
    assert labeling_cost(lab) == 4


def test_labeling_file_format():
    lab = Labeling([dup((1, 2), (3, 4)), loss((0, 1), Y)])
    assert render_labeling(lab) == (
        '{"events": [{"genome": "X", "kind": "dup", "target": [1, 2], "source": [3, 4]}, '
        '{"genome": "Y", "kind": "loss", "target": [0, 1]}]}\n'
    )


@pytest.mark.parametrize(
    "text",
    [
        "{}",
        '{"events": [{"genome": "Z", "kind": "loss", "target": [0, 1]}]}',
        '{"events": [{"genome": "X", "kind": "move", "target": [0, 1]}]}',
        '{"events": [{"genome": "X", "kind": "dup", "target": [0, 1]}]}',
        '{"events": [{"genome": "X", "kind": "loss", "target": [0]}]}',
    ],
)
def test_bad_labeling_files(text):
    with pytest.raises(LabelingFormatError):
        parse_labeling(text)
