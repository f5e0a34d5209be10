import json
import pytest

from krbraid.cache import CacheConfig, ResultCache, digest
from krbraid.homfly import clear_memo
from krbraid.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_PARSE, main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_psi_json(capsys):
    code, out = run(["psi", "--braid", "b=2; w= s1 s1 s1"], capsys)
    assert code == EXIT_OK
    cert = json.loads(out.out)
    assert cert["is_cocycle"] and not cert["class_zero"] and cert["bidegree"] == [0, -1]


def test_verify_suite(capsys):
    argv = ["verify", "--suite", "resolved-braids-n", "--n", "3", "--max-strands", "3", "--max-length", "4"]
    code, out = run(argv, capsys)
    (res,) = json.loads(out.out)
    assert code == EXIT_OK and res["pass"] and res["checked"] > 0


def test_parse_errors(capsys):
    code, out = run(["homfly", "--braid", "b=2; w= s0"], capsys)
    assert code == EXIT_PARSE and "usage" in out.err
    assert run(["homfly", "--bogus"], capsys)[0] == EXIT_PARSE
    assert run(["verify", "--suite", "nope"], capsys)[0] == EXIT_PARSE
    assert run(["moy", "--word", "b=2; w= t1", "--n", "1"], capsys)[0] == EXIT_PARSE


def test_budget_exit(capsys):
    clear_memo()  # memo hits cost nothing, so start from a cold process state
    code, out = run(["homfly", "--braid", "b=3; w= s1 -s2 s1 -s2 s1 -s2", "--budget", "1"], capsys)
    assert code == EXIT_BUDGET


def test_file_input(tmp_path, capsys):
    f = tmp_path / "words.txt"
    f.write_text("# census\nb=2; w= s1\n\nb=2; w= -s1\n")
    code, out = run(["bounds", "--file", str(f)], capsys)
    assert code == EXIT_OK
    assert [json.loads(ln)["braid"] for ln in out.out.splitlines()] == ["b=2; w= s1", "b=2; w= -s1"]


def test_plain_output(capsys):
    code, out = run(["moy", "--word", "b=1; w=", "--n", "3", "--format", "plain"], capsys)
    assert code == EXIT_OK
    assert out.out.split("\n")[:3] == ["q^-2: 1", "q^0: 1", "q^2: 1"]


def test_support_with_oracle(capsys):
    code, out = run(["support", "--word", "b=3; w= t2 t1 t2", "--oracle"], capsys)
    res = json.loads(out.out)
    assert code == EXIT_OK and res["oracle"] == [-3, -2, -1] and res["exact"] is False


def test_chi_check(capsys):
    code, out = run(["chi-check", "--n", "2"], capsys)
    assert code == EXIT_OK and json.loads(out.out)["pass"]


def test_khovanov_and_homfly_plain(capsys):
    code, out = run(["khovanov", "--braid", "b=2; w= s1", "--format", "plain"], capsys)
    assert code == EXIT_OK and "g2: [-1,1]" in out.out
    code, out = run(["homfly", "--braid", "b=2; w= s1", "--n", "2"], capsys)
    assert code == EXIT_OK and "F_n" in json.loads(out.out)


def test_failure_exit(monkeypatch, capsys):
    import krbraid.bounds as bounds

    real = bounds.full_report

    def broken(B, n=2, witness=None):
        rep = real(B, n, witness)
        rep.verdicts[0].passed = False
        return rep

    monkeypatch.setattr(bounds, "full_report", broken)
    assert run(["bounds", "--braid", "b=2; w= s1"], capsys)[0] == EXIT_FAIL


# -- cache ---------------------------------------------------------------------


def cache_lines(d, op):
    return (d / f"{op}.jsonl").read_text().splitlines()


def test_cache_hit_is_byte_identical(tmp_path, capsys):
    argv = ["homfly", "--braid", "b=2; w= s1 s1 s1", "--cache-dir", str(tmp_path)]
    _, first = run(argv, capsys)
    _, second = run(argv, capsys)
    assert first.out == second.out
    assert len(cache_lines(tmp_path, "homfly")) == 1
    line = json.loads(cache_lines(tmp_path, "homfly")[0])
    assert set(line) == {"k", "op", "p", "v", "r", "d"} and line["d"] == digest(line["r"])


def test_env_var_fallback(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("KRW_CACHE_DIR", str(tmp_path))
    run(["khovanov", "--braid", "b=2; w= s1"], capsys)
    assert cache_lines(tmp_path, "khovanov")


def test_conjugate_hits_same_line(tmp_path, capsys):
    run(["homfly", "--braid", "b=3; w= s1 s2 s2", "--cache-dir", str(tmp_path)], capsys)
    _, out = run(["homfly", "--braid", "b=3; w= s2 s1 s2", "--cache-dir", str(tmp_path)], capsys)
    assert len(cache_lines(tmp_path, "homfly")) == 1
    _, direct = run(["homfly", "--braid", "b=3; w= s2 s1 s2"], capsys)
    assert out.out == direct.out


def test_version_bump_invalidates(tmp_path):
    calls = []

    def compute():
        calls.append(1)
        return {"x": 1}

    ResultCache(CacheConfig(str(tmp_path), "v1")).get_or_compute("k", "op", {}, compute)
    assert ResultCache(CacheConfig(str(tmp_path), "v1")).get_or_compute("k", "op", {}, compute)[1]
    r, hit = ResultCache(CacheConfig(str(tmp_path), "v2")).get_or_compute("k", "op", {}, compute)
    assert not hit and r == {"x": 1} and len(calls) == 2


def test_params_separate_entries(tmp_path):
    c = ResultCache(CacheConfig(str(tmp_path)))
    c.put("k", "op", {"n": 2}, 2)
    c.put("k", "op", {"n": 3}, 3)
    assert c.get("k", "op", {"n": 2}) == 2 and c.get("k", "op", {"n": 3}) == 3


def test_corrupt_entry_recomputed(tmp_path):
    c = ResultCache(CacheConfig(str(tmp_path)))
    c.put("k", "op", {}, {"v": 1})
    path = tmp_path / "op.jsonl"
    path.write_text(path.read_text().replace('"v":1', '"v":2') + "{torn\n")
    c2 = ResultCache(CacheConfig(str(tmp_path)))
    r, hit = c2.get_or_compute("k", "op", {}, lambda: {"v": 1})
    assert not hit and r == {"v": 1} and c2.corrupt == 2


def test_roundtrip_exact(tmp_path):
    c = ResultCache(CacheConfig(str(tmp_path)))
    value = {"a": [1, "1/3", None, True], "b": {"z": -7}}
    c.put("k", "op", {}, value)
    assert ResultCache(CacheConfig(str(tmp_path))).get("k", "op", {}) == value


def test_unwritable_file_warns(tmp_path):
    (tmp_path / "op.jsonl").mkdir()  # append fails even for root
    c = ResultCache(CacheConfig(str(tmp_path)))
    with pytest.warns(UserWarning):
        r, hit = c.get_or_compute("k", "op", {}, lambda: 5)
    assert r == 5 and not hit


def test_uncreatable_dir_warns(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.warns(UserWarning):
        c = ResultCache(CacheConfig(str(blocker / "sub")))
    assert not c.enabled
    assert c.get_or_compute("k", "op", {}, lambda: [1])[0] == [1]


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--suite", "markov", "--count", "5", "--seed", "7"]
    _, a = run(argv, capsys)
    _, b = run(argv, capsys)
    assert a.out == b.out
