import json
import subprocess
import sys

import pytest

from floorgw.cli import main, parse_sparse, read_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariant(capsys):
    code, out, _ = run(capsys, "invariant", "--a", "2", "--b", "0", "--k", "1", "--g", "0",
                       "--beta", "2:1")
    assert code == 0 and out.strip() == "2"


def test_list_diagrams(capsys):
    code, out, _ = run(capsys, "invariant", "--a", "2", "--b", "1", "--k", "1", "--g", "0",
                       "--alpha", "2:1", "--beta", "1:1", "--alpha-tilde", "1:1", "--list-diagrams")
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    assert sorted(l["multiplicity"] for l in lines[:-1]) == [1, 1, 1, 1, 4]
    assert lines[-2]["running_sum"] == lines[-1]["value"] == 8


def test_f_with_negative_entries(capsys):
    code, out, _ = run(capsys, "f", "--a", "2", "--k", "2", "--g", "0", "--x", "-1,3", "--y", "-6",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["value"] == 276 and d["chamber"] == "0+-" and d["b"] == 3


def test_chamber_poly_latex(capsys):
    code, out, _ = run(capsys, "chamber-poly", "--a", "2", "--k", "0", "--g", "0", "--n1", "2",
                       "--n2", "1", "--point", "-1,-1,2", "--format", "latex")
    assert code == 0 and "x_{1}" in out


@pytest.mark.parametrize("argv,code", [
    (["invariant", "--a", "0", "--b", "1", "--k", "1", "--g", "0"], 2),
    (["invariant", "--a", "3", "--b", "1", "--k", "1", "--g", "0", "--alpha", "2:1",
      "--beta", "1:1", "--beta-tilde", "1:1"], 2),
    (["f", "--a", "2", "--k", "2", "--g", "0", "--x", "-1,3", "--y", "-5"], 2),
    (["f", "--a", "3", "--k", "2", "--g", "1", "--x", "-2,-2,-1,1", "--y", "-1,2,-3,1,-1",
      "--max-templates", "3"], 0),
    (["chamber-poly", "--a", "2", "--k", "2", "--g", "0", "--n1", "2", "--n2", "1",
      "--signature", "+-+++++++"], 4),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_budget_exit_code(capsys):
    argv = ["invariant", "--a", "3", "--b", "4", "--k", "2", "--g", "1", "--alpha", "1:1,2:2",
            "--beta", "1:2,3:1", "--alpha-tilde", "1:1", "--beta-tilde", "1:1,2:1",
            "--list-diagrams", "--max-templates", "10"]
    code, _, err = run(capsys, *argv)
    assert code == 3 and "budget" in err


def test_verify_suite_json(capsys):
    code, out, _ = run(capsys, "verify", "gamma", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["suite"] == "gamma"


def test_config_file(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nformat = json\nmax-templates = 100\n")
    assert read_config(str(cfg)) == {"format": "json", "max_templates": 100}
    monkeypatch.setenv("FLOORGW_CONFIG", str(cfg))
    code, out, _ = run(capsys, "f", "--a", "2", "--k", "2", "--g", "0", "--x", "-1,3", "--y", "-6")
    assert code == 0 and json.loads(out)["value"] == 276


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "invariant", "--a", "2", "--b", "0", "--k", "1", "--g", "0",
                       "--alpha", "2:1", "--output", str(target))
    assert code == 0 and out == "" and target.read_text().strip() == "1"


def test_parse_sparse():
    assert parse_sparse("1:2, 3:1") == {1: 2, 3: 1}
    with pytest.raises(ValueError):
        parse_sparse("2")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "floorgw.cli", "invariant", "--a", "2", "--b", "2",
                        "--k", "0", "--g", "0", "--alpha", "2:1", "--beta-tilde", "2:1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "8"
