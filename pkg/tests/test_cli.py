import json
import subprocess
import sys

import pytest

from gtutte import cli

from .conftest import FIXTURES


def run(capsys, *argv):
    code = cli.run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return FIXTURES / name


def test_tutte_running(capsys):
    code, out, _ = run(capsys, "tutte", fx("running_quotient.json"))
    assert (code, out) == (0, "x^2 + y^2 + 3x + 4y + 7\n")


def test_tutte_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "tutte", fx("running_quotient.json"))
    data = json.loads(out)
    assert code == 0 and data["tutte"] == "x^2 + y^2 + 3x + 4y + 7"
    assert sorted(map(tuple, data["coefficients"])) == [(0, 0, 7), (0, 1, 4), (0, 2, 1), (1, 0, 3), (2, 0, 1)]


def test_subcommand_format_flag(capsys):
    code, out, _ = run(capsys, "tutte", fx("rev2.json"), "--format", "json")
    assert code == 0 and json.loads(out)["tutte"] == "x^2 + x + y + 1"


def test_charpoly(capsys):
    code, out, _ = run(capsys, "charpoly", fx("running_poset.json"))
    assert (code, out) == (0, "t^2 - 5t + 11\n")
    code, out, _ = run(capsys, "charpoly", fx("running_quotient.json"))
    assert code == 0 and out.splitlines() == ["t^2 - 5t + 11", "chi = (-1)^r T(1-t,0): holds"]


def test_arithcheck(capsys):
    code, out, _ = run(capsys, "arithcheck", fx("noarithm.json"))
    assert code == 1
    assert "classification: almost-arithmetic" in out
    assert "(A.1.1): m({a,b,c})=3 does not divide m({a,c})=4" in out
    code, out, _ = run(capsys, "arithcheck", fx("running_quotient.json"))
    assert code == 0 and "classification: arithmetic" in out


def test_arithcheck_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "arithcheck", fx("noarithm.json"))
    data = json.loads(out)
    assert code == 1 and data["classification"] == "almost-arithmetic"
    assert json.loads(json.dumps(data)) == data


def test_delcon(capsys):
    code, out, _ = run(capsys, "delcon", fx("running_quotient.json"), "e")
    assert code == 0
    assert "T_del = x^2 + y^2 + 2x + 2y + 5" in out and "T_con = x + 2y + 2" in out
    assert "identity: holds" in out


def test_delcon_unknown_element(capsys):
    code, _, err = run(capsys, "delcon", fx("running_quotient.json"), "z")
    assert code == 2 and "z" in err


def test_crapo(capsys):
    code, out, _ = run(capsys, "crapo", fx("running_quotient.json"))
    assert code == 1 and out.startswith("precondition failed: not a semimatroid")
    code, out, _ = run(capsys, "crapo", fx("rev2.json"), "--order", "3,2,1")
    assert code == 0 and "identity: holds" in out


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", fx("running_quotient.json"))
    assert code == 1 and "(CR1)" in out
    code, out, _ = run(capsys, "validate", fx("running_poset.json"))
    assert code == 1 and "(semilattice)" in out


def test_zmatroid_and_duality(capsys):
    code, out, _ = run(capsys, "zmatroid", fx("rev2.json"))
    assert code == 0 and "M({3}) = Z/2" in out and "matroid over Z: ok" in out
    code, out, _ = run(capsys, "duality", fx("rev2.json"))
    assert (code, out) == (0, "duality: holds\n")


def test_square(capsys):
    code, out, _ = run(capsys, "square", fx("arithm_noalg_square.json"))
    assert code == 1
    assert "candidates: 2" in out and "pushout completions: 0" in out


def test_layers_formats(capsys):
    code, out, _ = run(capsys, "layers", fx("rev2.json"))
    assert code == 0 and sum(1 for line in out.splitlines() if line.startswith("L") and "<" not in line) == 6
    code, out, _ = run(capsys, "--format", "dot", "layers", fx("rev2.json"))
    assert code == 0 and out.startswith("digraph") and "rank=" in out
    code, out, _ = run(capsys, "--format", "json", "layers", fx("rev2.json"))
    assert code == 0 and len(json.loads(out)["elements"]) == 6


def test_dot_only_for_layers(capsys):
    code, _, err = run(capsys, "--format", "dot", "tutte", fx("rev2.json"))
    assert code == 2 and "dot" in err


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "ground": ["a",\n  }\n')
    code, _, err = run(capsys, "tutte", p)
    assert code == 2 and "malformed JSON" in err and "line 3, column 3" in err


def test_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "tutte", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in err


def test_unknown_input_kind(tmp_path, capsys):
    p = tmp_path / "odd.json"
    p.write_text('{"hello": 1}')
    code, _, err = run(capsys, "tutte", p)
    assert code == 2 and err.startswith("error:")


def test_wrong_input_kind(capsys):
    code, _, err = run(capsys, "validate", fx("rev2.json"))
    assert code == 2 and "arrangement" in err


def test_bad_arguments(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_ground_cap(monkeypatch, capsys):
    monkeypatch.setenv("TT_MAX_GROUND", "2")
    code, _, err = run(capsys, "tutte", fx("running_quotient.json"))
    assert code == 2 and "TT_MAX_GROUND=2" in err
    monkeypatch.setenv("TT_MAX_GROUND", "3")
    assert run(capsys, "tutte", fx("rev2.json"))[0] == 0
    monkeypatch.setenv("TT_MAX_GROUND", "lots")
    code, _, err = run(capsys, "tutte", fx("rev2.json"))
    assert code == 2 and "integer" in err


def test_layers_json_round_trip(tmp_path, capsys):
    """The layer poset written as JSON reads back as a poset with the same chi."""
    code, out, _ = run(capsys, "--format", "json", "layers", fx("rev2.json"))
    assert code == 0
    p = tmp_path / "poset.json"
    p.write_text(out)
    code, out, _ = run(capsys, "charpoly", p)
    assert (code, out) == (0, "t^2 - 3t + 3\n")


def test_rational_offsets(tmp_path, capsys):
    p = tmp_path / "arr.json"
    # x = 1/2, y = 0, x + y = 1/3 (mod 1): three lines, three distinct points
    p.write_text(json.dumps({"d": 2, "columns": [[1, 0], [0, 1], [1, 1]], "offsets": ["1/2", "0", "1/3"]}))
    code, out, _ = run(capsys, "charpoly", p)
    assert code == 0 and out.splitlines()[0] == "t^2 - 3t + 3"
    p.write_text(json.dumps({"d": 1, "columns": [[1]], "offsets": ["1/0"]}))
    assert run(capsys, "tutte", p)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gtutte", "tutte", str(fx("rev2.json"))],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "x^2 + x + y + 1\n"


@pytest.mark.parametrize("cmd", sorted(cli.COMMANDS))
def test_help_for_every_command(cmd, capsys):
    assert run(capsys, cmd, "--help")[0] == 0


def test_delcon_on_arrangement_and_poset(capsys):
    code, out, _ = run(capsys, "delcon", fx("rev2.json"), "1")
    assert code == 0 and "T_con = x + y + 1" in out and "identity: holds" in out
    code, _, err = run(capsys, "delcon", fx("running_poset.json"), "a")
    assert code == 2 and "does not take poset input" in err
