import json
from pathlib import Path

import pytest

from syzlab.cli import main, parse_criteria

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def test_mod_syzygy(capsys):
    code, rep = run_json(capsys, "mod", "syzygy", "S(1)", "--algebra", "A2", "--n", "1")
    assert code == 0
    assert rep["syzygy"] == [0, 1]
    assert rep["config"]["field_char"] == 5


def test_free_loop_not_admissible(capsys):
    code, rep = run_json(capsys, "alg", "validate", str(DATA / "free_loop.json"))
    assert code == 1 and rep["error"] == "NotAdmissible"


def test_algebra_file(capsys):
    code, rep = run_json(capsys, "alg", "validate", str(DATA / "a2.json"))
    assert code == 0 and rep["valid"]


def test_bad_module_expression(capsys):
    code, rep = run_json(capsys, "mod", "pd", "Q(1)", "--algebra", "A2")
    assert code == 1 and rep["error"] == "InputError"


def test_strict_undecided(capsys):
    code, _ = run_json(capsys, "--strict", "--depth-cap", "0", "mod", "psi", "S(1)", "--algebra", "L2")
    assert code == 2
    code, rep = run_json(capsys, "--depth-cap", "0", "mod", "psi", "S(1)", "--algebra", "L2")
    assert code == 0


def test_env_caps(capsys, monkeypatch):
    monkeypatch.setenv("SYZLAB_DEPTH_CAP", "3")
    _, rep = run_json(capsys, "mod", "phi", "S(1)", "--algebra", "L2")
    assert rep["config"]["depth_cap"] == 3
    _, rep = run_json(capsys, "--depth-cap", "5", "mod", "phi", "S(1)", "--algebra", "L2")
    assert rep["config"]["depth_cap"] == 5


def test_global_options_after_subcommand(capsys):
    code, rep = run_json(capsys, "mod", "ext", "S(1)", "--other", "S(1)", "--algebra", "L2", "--seed", "3")
    assert code == 0 and rep["config"]["seed"] == 3


def test_text_format(capsys):
    code, out = run(capsys, "--format", "text", "mod", "syzygy", "S(1)", "--algebra", "A2")
    assert code == 0 and "syzygy" in out and not out.lstrip().startswith("{")


def test_pex_round_trip(capsys, tmp_path):
    code, out = run(capsys, "--format", "json", "pex", "build", "--algebra", "A2", "--ses", "cover:S(1)", "--g", "cover")
    assert code == 0
    path = tmp_path / "d.json"
    path.write_text(out)
    code, rep = run_json(capsys, "pex", "validate", str(path), "--algebra", "A2")
    assert code == 0 and rep["valid"]
    code, rep = run_json(capsys, "pex", "cover", str(path), "--algebra", "A2")
    assert code == 0 and all(rep["checks"].values())


def test_pex_extension_fixture(capsys):
    code, rep = run_json(capsys, "pex", "build", "--extension", "0,0,1,0")
    assert not rep["validation"]["valid"]
    code, rep = run_json(capsys, "pex", "build", "--extension", "0,4,1,0")
    assert rep["validation"]["valid"]


def test_triangular_commands(capsys):
    code, rep = run_json(capsys, "tri", "tk", "--gamma", "L2", "--k", "2")
    assert code == 0
    code, rep = run_json(capsys, "tri", "syzygy", "corpus:0", "--algebra", "T2(L2)", "--n", "1", "--both")
    assert code == 0


def test_it_commands(capsys):
    code, rep = run_json(capsys, "it", "check", "--algebra", "T2(L2)")
    assert code == 0
    code, rep = run_json(capsys, "it", "build", "--algebra", "T2(L2)")
    assert code == 0


def test_decomp_and_szf(capsys):
    code, rep = run_json(capsys, "decomp", "2*P(1) + S(2)", "--algebra", "A2")
    assert code == 0
    assert sorted(s["multiplicity"] for s in rep["summands"]) == [1, 2]
    code, rep = run_json(capsys, "szf", "search", "S(1)", "P(1)", "--algebra", "L2")
    assert code == 0 and rep["verdict"] == "CONFIRMED" and rep["level"] == 0


def test_parse_criteria():
    assert parse_criteria("1-3,7") == [1, 2, 3, 7]
    assert parse_criteria("10") == [10]
    with pytest.raises(ValueError):
        parse_criteria("0")
