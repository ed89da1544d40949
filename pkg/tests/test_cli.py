import json
from pathlib import Path

import pytest

from mla.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_graph_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "gen-graph", "--kind", "random", "--n", 10, "--seed", 7, "--out", p)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_graph_k4_matches_golden(capsys):
    code, out, _ = run(capsys, "gen-graph", "--kind", "k4")
    assert code == 0 and out.encode() == (GOLDEN / "k4_graph.json").read_bytes()


@pytest.mark.parametrize("n", [7, 2])
def test_gen_graph_rejects_bad_n(capsys, n):
    code, _, err = run(capsys, "gen-graph", "--kind", "random", "--n", n)
    assert code == 2 and "even" in err


def test_reduce_outputs(tmp_path, capsys):
    inst, bmap = tmp_path / "k4.json", tmp_path / "k4.blocks.json"
    code, out, _ = run(capsys, "reduce", GOLDEN / "k4_graph.json", "--instance", inst, "--blockmap", bmap)
    assert code == 0 and out.strip() == "columns: 234, max-occurrence: 5"
    assert inst.read_bytes() == (GOLDEN / "k4_instance.json").read_bytes()
    assert bmap.read_bytes() == (GOLDEN / "k4_blockmap.json").read_bytes()


def test_reduce_rejects_non_cubic(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 4, "edges": [[1, 2], [2, 3], [3, 4], [1, 4]]}))
    code, _, err = run(capsys, "reduce", bad)
    assert code == 2 and "degree" in err


def test_reduce_rejects_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "reduce", bad)[0] == 2


def test_cover_pipeline_and_verify(tmp_path, capsys):
    cover, lab = tmp_path / "cover.json", tmp_path / "lab.json"
    graph = GOLDEN / "k4_graph.json"
    code, out, _ = run(capsys, "vc", graph, "--out", cover)
    assert code == 0 and out.startswith("size: 3")
    code, out, _ = run(capsys, "map", "cover-to-labeling", graph, "--cover", cover, "--out", lab)
    assert code == 0 and out.strip() == "cost: 43"
    code, out, _ = run(capsys, "verify", GOLDEN / "k4_instance.json", lab,
                       "--blockmap", GOLDEN / "k4_blockmap.json")
    assert code == 0
    assert out.splitlines()[0] == "cover-valid: true, feasible: true, cost: 43"
    back = tmp_path / "back.json"
    code, out, _ = run(capsys, "map", "labeling-to-cover", graph, "--labeling", lab, "--out", back)
    assert code == 0 and out.strip() == "size: 3"
    assert json.loads(back.read_text()) == json.loads(cover.read_text())


def test_verify_reports_cycle(tmp_path, capsys):
    inst, lab = tmp_path / "inst.json", tmp_path / "lab.json"
    tok = lambda s: f"p:{s}"  # noqa: E731
    inst.write_text(json.dumps({"columns": 4, "rowX": [tok("a"), tok("b"), tok("a"), tok("b")],
                                "rowY": ["-"] * 4}))
    # each half copied from the other: a two-cycle
    lab.write_text(json.dumps({"events": [
        {"kind": "dup", "genome": "X", "target": [0, 2], "source": [2, 4]},
        {"kind": "dup", "genome": "X", "target": [2, 4], "source": [0, 2]},
    ]}))
    code, out, _ = run(capsys, "verify", inst, lab)
    assert code == 1
    assert out.splitlines()[0] == "cover-valid: true, feasible: false, cost: 2"


def test_solve_small_instance(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps({"columns": 3, "rowX": ["p:a", "p:b", "p:a"], "rowY": ["p:a", "-", "p:a"]}))
    code, out, _ = run(capsys, "solve", inst, "--json")
    assert code == 0 and {k: json.loads(out)[k] for k in ("cost", "proven_optimal")} == {"cost": 1, "proven_optimal": True}
    code, out, _ = run(capsys, "solve", inst, "--mode", "oracle")
    assert code == 0 and out.startswith("cost: 1")


def test_solve_refuses_full_reduction(capsys):
    code, _, err = run(capsys, "solve", GOLDEN / "k4_instance.json")
    assert code == 2 and "desk-scale" in err


def test_check_lemmas_k4(capsys):
    code, out, _ = run(capsys, "check-lemmas", GOLDEN / "k4_graph.json", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert {c["check"] for c in doc["checks"]} >= {"vertex-block-min", "edge-block-min", "optimum-certificate"}


def test_report_k4(capsys):
    code, out, _ = run(capsys, "report", GOLDEN / "k4_graph.json", "--json")
    assert code == 0
    assert json.loads(out) == {"n": 4, "edges": 6, "tau": 3, "opt_cost": 43,
                               "identity_ok": True, "apx_bound_ok": True}
