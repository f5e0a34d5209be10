import importlib.util
import json
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_run_sweeps(tmp_path):
    out = tmp_path / "s.json"
    assert load("run_sweeps").main(["--suite", "sharpness", "--suite", "chi", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert [r["suite"] for r in rows] == ["sharpness", "chi"] and all(r["pass"] for r in rows)


def test_open_questions(capsys):
    argv = ["all", "--max-strands", "3", "--max-length", "3", "--braid-strands", "2", "--braid-length", "2"]
    assert load("open_questions").main(argv) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["triangle"]["strict"] == 0
    assert {(d["sl"], d["classical"], d["proxy"]) for d in out["proxy"]["half_tick_deltas"]} == {(-4, 0, 4)}
