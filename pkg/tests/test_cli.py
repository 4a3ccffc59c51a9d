import json

import pytest
from click.testing import CliRunner

from spectral_paths.cli import main

H_A = "1,2,1,2,2,1,3,0,3,2,1,2,3,0,3,1,2,3,0,3"


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, list(args), env=env, catch_exceptions=False)

    return invoke


def test_decode_spectrum(run):
    res = run("decode", "--l", "3", "--k", "1", "--h", H_A)
    assert res.exit_code == 0, res.output
    rec = json.loads(res.output)
    assert rec["N"] == 11
    assert rec["a"] == [0, 2, 1, 1, 0, 1, 0, 1, 1, 0, 1]
    assert rec["h_sharp"] == [3, 2, 3, 3, 1]
    assert rec["size"] == 51


def test_decode_ground_path_from_json(run):
    res = run("decode", "--input", json.dumps({"l": 3, "k": 2, "window": []}))
    assert res.exit_code == 0
    rec = json.loads(res.output)
    assert rec["r"] == [0, 1, 2] and rec["a"] == [0, 0]


def test_decode_path_window(run):
    res = run("decode", "--l", "3", "--k", "1", "--window", "-3,0,-1,0")
    assert res.exit_code == 0, res.output
    rec = json.loads(res.output)
    assert rec["r"] == [0, 1, 2, 1] and rec["a"] == [0, 1, 0]


def test_encode_round_trip_is_byte_identical(run, tmp_path):
    dec = run("decode", "--l", "3", "--k", "1", "--h", H_A)
    rec = json.loads(dec.output)
    key = tmp_path / "key.json"
    key.write_text(json.dumps({"N": rec["N"], "r": rec["r"], "a": rec["a"]}))
    enc = run("encode", "--l", "3", "--k", "1", "--key", str(key))
    assert enc.exit_code == 0
    assert enc.output == dec.output
    h = ",".join(str(x) for x in json.loads(enc.output)["h"])
    assert h == H_A


def test_encode_from_flags(run):
    res = run("encode", "--l", "3", "--k", "1", "--r", "0,1,2,1", "--a", "0,1,0", "--format", "tsv")
    assert res.exit_code == 0
    header, row = res.output.splitlines()
    assert header.split("\t")[:5] == ["l", "k", "N", "r", "a"]
    assert "1,2,2" in row.split("\t")  # h_4 = 2 already matches the ground state


def test_decompose_contains_example_row(run):
    res = run("decompose", "--l", "3", "--k", "1", "--emax", "3")
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["delta_prefactor"] == [3, 20]
    row = next(r for r in rep["rows"] if r["r"] == [0, 1, 2, 1] and r["a"] == [0, 1, 0])
    assert row["fiber_count"] == 6
    assert row["d"] == 1 and row["size"] == 2 and row["beta"] == [1, 2]


def test_decompose_ground_only(run):
    res = run("decompose", "--l", "1", "--k", "0", "--emax", "0", "--format", "tsv")
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0].split("\t")[:3] == ["k", "N", "r"]
    assert len(lines) == 3  # header, ground row, totals
    assert lines[2].split("\t")[1] == "total"


def test_decompose_total_matches_character(run):
    dec = json.loads(run("decompose", "--l", "2", "--k", "1", "--emax", "5").output)
    for method in ("brute_force", "factorized", "bosonic", "rsos", "fermionic"):
        ch = json.loads(run("character", "--l", "2", "--k", "1", "--qmax", "5", "--method", method).output)
        assert ch["terms"] == dec["total"]["terms"], method
        assert ch["delta_prefactor"] == dec["delta_prefactor"]


def test_character_tsv_has_exact_prefactor(run):
    res = run("character", "--l", "3", "--k", "1", "--qmax", "2", "--format", "tsv")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "# l=3 k=1 method=bosonic delta=3/20"


def test_character_all_k(run):
    res = run("character", "--l", "2", "--qmax", "3")
    data = json.loads(res.output)
    assert [d["k"] for d in data] == [0, 1, 2]


@pytest.mark.parametrize("args", [
    ("verify", "thm4.2", "--l", "3", "--emax", "6"),
    ("verify", "lemma4.5", "--l", "4", "--nmax", "3"),
    ("verify", "thm2.1", "--l", "1", "--k", "1", "--qmax", "8"),
])
def test_verify_examples_pass(run, args):
    res = run(*args)
    assert res.exit_code == 0
    payload = json.loads(res.stdout)
    assert all(r["passed"] for r in payload["results"])


def test_verify_failure_exit_code(run, monkeypatch):
    from spectral_paths import verify

    def tasks(b):
        return [(0,)]

    def check(t):
        out = verify._Partial()
        out.check(False, lambda: {"why": "forced"})
        return out

    monkeypatch.setitem(verify.SUITES, "prop2.2", (tasks, check))
    res = run("verify", "prop2.2", "--format", "tsv")
    assert res.exit_code == 1
    assert '{"why": "forced"}' in res.stdout


def test_resource_cap_exit_code(run):
    res = run("decompose", "--l", "3", "--k", "1", "--emax", "6", "--max-paths", "5")
    assert res.exit_code == 3
    assert res.stdout == ""


@pytest.mark.parametrize("args", [
    ("decode", "--l", "3", "--k", "1", "--h", "0,1"),
    ("decode", "--l", "3", "--k", "1", "--h", "1,x"),
    ("encode", "--l", "3", "--k", "1", "--r", "0,2", "--a", "0,0"),
    ("decompose", "--l", "2", "--k", "5", "--emax", "2"),
    ("decompose", "--l", "2", "--emax", "-1"),
    ("character", "--l", "2", "--qmax", "2", "--method", "nope"),
    ("encode", "--l", "3", "--k", "1", "--key", "/no/such/file.json"),
])
def test_invalid_input_exit_code(run, args):
    assert run(*args).exit_code == 2


def test_out_file_and_env_override(run, tmp_path):
    out = tmp_path / "rep.json"
    res = run("decompose", "--l", "1", "--k", "1", "--out", str(out),
              env={"SPECTRAL_PATHS_DECOMPOSE_EMAX": "2"})
    assert res.exit_code == 0 and res.stdout == ""
    assert json.loads(out.read_text())["emax"] == 2


def test_jobs_do_not_change_output(run):
    one = run("decompose", "--l", "2", "--k", "0", "--emax", "4", "--jobs", "1")
    four = run("decompose", "--l", "2", "--k", "0", "--emax", "4", "--jobs", "4")
    assert one.stdout == four.stdout
