import json
import subprocess
import sys

import pytest

from skewpack.cli import main

FIG2 = {"version": 1, "items": [
    {"id": 0, "w": "3/5", "h": "3/5", "kind": "wide"},
    {"id": 1, "w": "3/5", "h": "3/5", "kind": "wide"},
    {"id": 2, "w": "3/5", "h": "3/5", "kind": "tall"},
    {"id": 3, "w": "3/5", "h": "3/5", "kind": "tall"}]}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fig2(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_text(json.dumps(FIG2))
    return path


def test_gen_then_oracle(tmp_path, capsys):
    inst = tmp_path / "i.json"
    assert run(["gen", "--family", "lowerbound", "--m", "1", "--k", "1", "--eps", "1/5",
                "-o", str(inst)], capsys)[0] == 0
    code, out, _ = run(["oracle", str(inst)], capsys)
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(["oracle", str(inst), "--guillotine"], capsys)
    assert code == 0 and out.strip() == "2"


def test_oracle_above_max_bins(tmp_path, capsys):
    inst = tmp_path / "i.json"
    run(["gen", "--family", "lowerbound", "--m", "2", "--k", "1", "-o", str(inst)], capsys)
    code, _, err = run(["oracle", str(inst), "--max-bins", "1"], capsys)
    assert code == 1 and json.loads(err)["error"] == "exceeds_max"


def test_pack_s2bp_and_verify_two_stages(fig2, tmp_path, capsys):
    lay = tmp_path / "l.json"
    assert run(["pack", str(fig2), "--algo", "s2bp", "-o", str(lay)], capsys)[0] == 0
    data = json.loads(lay.read_text())
    assert len(data["bins"]) == 2 and data["meta"]["rules"] == "s2bp"
    code, out, _ = run(["verify", str(fig2), str(lay), "--guillotine", "--stages", "2"], capsys)
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["stages"] == [2, 2]
    code, out, _ = run(["verify", str(fig2), str(lay), "--stages", "1"], capsys)
    assert code == 1 and json.loads(out)["violations"][0]["kind"] == "too_many_stages"


def test_verify_reports_overlap(fig2, tmp_path, capsys):
    lay = tmp_path / "bad.json"
    row = {"x": "0", "y": "0", "w": "3/5", "h": "3/5", "slice": None}
    lay.write_text(json.dumps({"bins": [{"placements": [dict(row, item=k) for k in range(4)]}]}))
    code, out, _ = run(["verify", str(fig2), str(lay)], capsys)
    report = json.loads(out)
    assert code == 1 and any(v["kind"] == "overlap" for v in report["violations"])


def test_usage_errors(capsys):
    code, _, err = run(["pack"], capsys)
    assert code == 2 and json.loads(err)["error"] == "usage"
    assert run(["gen", "--family", "lowerbound", "--eps", "abc"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_missing_file_is_a_usage_error(tmp_path, capsys):
    code, _, err = run(["pack", str(tmp_path / "nope.json"), "--algo", "nfdh"], capsys)
    assert code == 2 and "message" in json.loads(err)


def test_non_skewed_input_is_a_usage_error(tmp_path, capsys):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps({"items": [{"id": 0, "w": "1/2", "h": "1/2"}]}))
    code, _, err = run(["pack", str(path), "--algo", "skewed4pack"], capsys)
    assert code == 2 and json.loads(err)["error"] == "SkewnessError"


def test_render_svg(fig2, tmp_path, capsys):
    lay = tmp_path / "l.json"
    run(["pack", str(fig2), "--algo", "s2bp", "-o", str(lay)], capsys)
    code, out, _ = run(["render", str(lay), "--instance", str(fig2), "--cuts"], capsys)
    assert code == 0 and out.startswith("<svg") and out.count('id="bin-') == 2


def test_pack_is_deterministic(tmp_path, capsys):
    inst = tmp_path / "r.json"
    run(["gen", "--family", "random", "--n", "40", "--seed", "5", "-o", str(inst)], capsys)
    outs = []
    for _ in range(2):
        code, out, _ = run(["pack", str(inst), "--algo", "skewed4pack"], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_bench_table_and_threads(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SKEWPACK_THREADS", "1")
    rep = tmp_path / "b.json"
    code, out, _ = run(["bench", "--random", "2", "--lowerbound", "1", "--n", "20",
                        "--algos", "nfdh,skewed4pack", "--oracle", "-o", str(rep)], capsys)
    assert code == 0 and "lowerbound-m1-k1" in out
    data = json.loads(rep.read_text())
    assert len(data["rows"]) == 6
    assert all(r["runtime"] is None for r in data["rows"])


def test_bench_needs_instances(capsys):
    assert run(["bench"], capsys)[0] == 2


def test_module_entry_point(tmp_path):
    inst = tmp_path / "i.json"
    proc = subprocess.run([sys.executable, "-m", "skewpack", "gen", "--family", "lowerbound",
                           "-o", str(inst)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(inst.read_text())["items"]
