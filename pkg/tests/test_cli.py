import json

import pytest

from cyclenest import Graph, load_graph, save_graph
from cyclenest.cli import main, summarize_jsonl

from conftest import complete, cycle_graph


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_complete_graph(tmp_path, n, name="g.txt"):
    path = tmp_path / name
    save_graph(complete(n), path)
    return str(path)


def test_gen_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "gen.txt"
    code, _ = run_cli(capsys, "gen", "gnp", "--n", "30", "--p", "0.2",
                      "--seed", "3", "-o", str(out_path))
    assert code == 0
    g = load_graph(out_path)
    save_graph(g, tmp_path / "again.txt")
    assert out_path.read_text() == (tmp_path / "again.txt").read_text()


def test_gen_usage_error_exit_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "gnp", "--n", "10"])   # neither --p nor --avg-degree
    assert exc.value.code == 2


def test_gen_random_regular(tmp_path, capsys):
    out_path = tmp_path / "rr.txt"
    code, _ = run_cli(capsys, "gen", "random-regular", "--n", "10", "--d", "3",
                      "--seed", "1", "-o", str(out_path))
    assert code == 0
    g = load_graph(out_path)
    assert 2 * g.m == 30


def test_nest_find_and_verify(tmp_path, capsys):
    gpath = write_complete_graph(tmp_path, 12)
    code, out = run_cli(capsys, "nest", "find", gpath, "--k", "2", "--seed", "0")
    assert code == 0
    report = json.loads(out)
    assert report["success"]

    fam_path = tmp_path / "fam.json"
    fam_path.write_text(json.dumps(report["family"]))
    code, out = run_cli(capsys, "nest", "verify", gpath, "--family", str(fam_path))
    assert code == 0
    assert json.loads(out)["pass"]


def test_nest_find_failure_exit_1(tmp_path, capsys):
    path_graph = Graph(6, [(i, i + 1) for i in range(5)])
    gpath = tmp_path / "tree.txt"
    save_graph(path_graph, gpath)
    code, out = run_cli(capsys, "nest", "find", str(gpath), "--k", "2")
    assert code == 1
    assert not json.loads(out)["success"]


def test_nest_verify_bad_family_exit_1(tmp_path, capsys):
    gpath = write_complete_graph(tmp_path, 6)
    fam_path = tmp_path / "fam.json"
    fam_path.write_text(json.dumps({"cycles": [[0, 1, 2, 3, 4, 5], [0, 3, 1, 4]]}))
    code, out = run_cli(capsys, "nest", "verify", gpath, "--family", str(fam_path))
    assert code == 1
    verdict = json.loads(out)
    assert not verdict["pass"] and not verdict["order_agrees"]


def test_expander_reduce_cli(tmp_path, capsys):
    gpath = write_complete_graph(tmp_path, 8)
    code, out = run_cli(capsys, "expander", "reduce", gpath)
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 8 and data["min_degree"] == 7


def test_expander_test_cli(tmp_path, capsys):
    gpath = write_complete_graph(tmp_path, 6)
    code, out = run_cli(capsys, "expander", "test", "--exact", gpath)
    assert code == 0
    assert json.loads(out)["verdict"] == "expander"

    code, out = run_cli(capsys, "expander", "test", "--sampled", gpath,
                        "--trials", "50", "--seed", "1")
    assert code == 0
    assert "50" in json.loads(out)["verdict"]


def test_connect_cli(tmp_path, capsys):
    gpath = tmp_path / "c8.txt"
    save_graph(cycle_graph(8), gpath)
    (tmp_path / "x.set").write_text("0\n")
    (tmp_path / "y.set").write_text("4\n")
    (tmp_path / "s.set").write_text("# avoid\n1\n")
    code, out = run_cli(capsys, "connect", str(gpath),
                        "--from-file", str(tmp_path / "x.set"),
                        "--to-file", str(tmp_path / "y.set"),
                        "--avoid", str(tmp_path / "s.set"))
    assert code == 0
    data = json.loads(out)
    assert data["path"] == [0, 7, 6, 5, 4]
    assert data["length"] == 4


def test_connect_cli_failure(tmp_path, capsys):
    gpath = tmp_path / "c8.txt"
    save_graph(cycle_graph(8), gpath)
    (tmp_path / "x.set").write_text("0\n")
    (tmp_path / "y.set").write_text("3\n")
    (tmp_path / "s.set").write_text("1 5\n")
    code, out = run_cli(capsys, "connect", str(gpath),
                        "--from-file", str(tmp_path / "x.set"),
                        "--to-file", str(tmp_path / "y.set"),
                        "--avoid", str(tmp_path / "s.set"))
    assert code == 1
    data = json.loads(out)
    assert "no short connection" in data["error"]
    assert data["trace_x"]["sizes"][0] == 1


def test_wrap_cli(tmp_path, capsys):
    gpath = write_complete_graph(tmp_path, 9)
    cyc_path = tmp_path / "cycle.json"
    cyc_path.write_text(json.dumps({"cycle": [0, 1, 2]}))
    for mode in ("controlled", "linked"):
        code, out = run_cli(capsys, "wrap", gpath, "--mode", mode,
                            "--cycle", str(cyc_path), "--seed", "1")
        assert code == 0
        data = json.loads(out)
        assert set([0, 1, 2]) <= set(data["cycle"])
        assert "theoretical_preconditions_held" in data
        assert data["restarts_used"] >= 0


def test_sweep_single_seed_complete_graph(tmp_path, capsys):
    out_prefix = tmp_path / "sweep"
    code, out = run_cli(capsys, "sweep", "gnp", "--n", "12", "--p", "1.0",
                        "--k", "2", "--seed-count", "1", "--out", str(out_prefix))
    assert code == 0
    summary = json.loads((tmp_path / "sweep.summary.json").read_text())
    assert summary["runs"] == 1
    assert summary["success_rate"] == 1.0
    lines = (tmp_path / "sweep.jsonl").read_text().splitlines()
    assert len(lines) == 1


def test_sweep_zero_seeds_empty_summary(tmp_path, capsys):
    out_prefix = tmp_path / "empty"
    code, _ = run_cli(capsys, "sweep", "gnp", "--n", "12", "--p", "0.5",
                      "--k", "2", "--seed-count", "0", "--out", str(out_prefix))
    assert code == 0
    summary = json.loads((tmp_path / "empty.summary.json").read_text())
    assert summary["runs"] == 0 and summary["success_rate"] is None


def test_sweep_lines_reverify_from_file_contents(tmp_path, capsys):
    out_prefix = tmp_path / "sweep"
    code, _ = run_cli(capsys, "sweep", "gnp", "--n", "60", "--avg-degree", "12",
                      "--k", "2", "--seed-count", "3", "--out", str(out_prefix))
    assert code == 0
    from cyclenest.cli import _generate
    for line in (tmp_path / "sweep.jsonl").read_text().splitlines():
        rec = json.loads(line)
        spec, seed, report = rec["spec"], rec["seed"], rec["report"]
        if not report["success"]:
            continue
        g = _generate(spec["generator"], spec["n"], spec["p"],
                      spec["avg_degree"], spec["d"], seed)
        gpath = tmp_path / f"graph_{seed}.txt"
        save_graph(g, gpath)
        fam_path = tmp_path / f"fam_{seed}.json"
        fam_path.write_text(json.dumps(report["family"]))
        rc, out2 = run_cli(capsys, "nest", "verify", str(gpath),
                           "--family", str(fam_path))
        assert rc == 0 and json.loads(out2)["pass"]


def test_summarize_jsonl_quantiles(tmp_path):
    path = tmp_path / "runs.jsonl"
    rows = []
    for i, length in enumerate([3, 5, 9]):
        rows.append(json.dumps({
            "spec": {}, "seed": i,
            "report": {"success": True,
                       "layers": [{"layer": 2, "mode": "shortest_cycle",
                                   "length": length, "precondition_held": True}],
                       "schedule": {"flags": {"log_q": True}}},
        }))
    path.write_text("\n".join(rows) + "\n")
    summary = summarize_jsonl(path)
    assert summary["runs"] == 3
    assert summary["layer_lengths"]["2"]["min"] == 3
    assert summary["layer_lengths"]["2"]["max"] == 9
    assert summary["layer_lengths"]["2"]["p50"] == 5
    assert summary["flag_counts"]["log_q"] == 3
