import json
import subprocess
import sys

import pytest

from duncehat import delta, io
from duncehat.cli import main
from duncehat.construct import duncehat_construct


def run(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "duncehat", *args], input=stdin,
                          capture_output=True, text=True)


def test_complex_round_trip():
    for cx in (delta.dunce_hat(), delta.disc(), delta.torus()):
        assert io.load_complex(io.dump_complex(cx)) == cx


def test_construct_round_trip():
    X = duncehat_construct()
    assert io.load_construct(io.dump_construct(X)) == X


@pytest.mark.parametrize("text, where", [
    ('{"vertices": [', "line 1"),
    ('{"vertices": [], "edges": {}}', "$"),
    ('{"vertices": ["v"], "edges": {"e": ["v"]}, "triangles": {}}', "$.edges.e"),
    ('{"vertices": ["v"], "edges": {"e": ["v","v"]}, "triangles": {"t": [["e","x"],["e","+"],["e","-"]]}}',
     "$.triangles.t[0]"),
])
def test_complex_parse_errors(text, where):
    with pytest.raises(io.ParseError) as exc:
        io.load_complex(text)
    assert exc.value.where.startswith(where)


def test_construct_parse_errors():
    with pytest.raises(io.ParseError, match="lattice.type"):
        io.load_construct('{"components": [{"lattice": {"type": "cone"}}]}')
    with pytest.raises(io.ParseError, match=r"branches\[0\].class"):
        io.load_construct('{"components": [{"lattice": {"type": "blown_up_plane", "n": 1},'
                          ' "branches": [{"class": [1, 0, 0]}]}]}')


def test_gram_lattice_parses():
    X = io.load_construct('{"components": [{"lattice": {"type": "gram", "gram": [[0,1],[1,0]]},'
                          ' "branches": [{"class": [1, 0]}]}]}')
    assert X.components[0].lattice.blowups is None


def test_examples_byte_stable(capsys):
    for name in io.EXAMPLES:
        assert main(["examples", name]) == 0
        first = capsys.readouterr().out
        main(["examples", name])
        assert capsys.readouterr().out == first


def test_examples_unknown(capsys):
    assert main(["examples", "nope"]) == 2
    assert "duncehat-complex" in capsys.readouterr().err


def test_examples_match_builtins():
    assert io.load_complex(io.example_text("duncehat-complex")) == delta.dunce_hat()
    assert io.load_construct(io.example_text("duncehat-construct")) == duncehat_construct()


def test_dcx_check_dunce_hat_stdin():
    r = run("dcx", "check", "-", stdin=io.example_text("duncehat-complex"))
    assert r.returncode == 0
    assert "chi = 1" in r.stdout and "(1,0,0)" in r.stdout
    assert "NotCollapsible: no free faces exist" in r.stdout


def test_dcx_check_disc(tmp_path):
    p = tmp_path / "disc.json"
    p.write_text(io.example_text("disc"))
    r = run("dcx", "check", str(p))
    assert r.returncode == 0 and "Collapsible: certificate of length 3" in r.stdout


def test_dcx_bad_flag(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices": ["v"], "edges": {"e": ["v","v"]},'
                 ' "triangles": {"t": [["e","x"],["e","+"],["e","-"]]}}')
    r = run("dcx", "check", str(p))
    assert r.returncode == 2 and "$.triangles.t[0]" in r.stderr


def test_missing_file_and_usage():
    assert run("dcx", "check", "/nonexistent.json").returncode == 2
    assert run().returncode == 2
    assert run("construct", "report", "-", "--diagonal", "sideways", stdin="{}").returncode == 2


def test_construct_report_dunce_hat():
    r = run("construct", "report", "-", stdin=io.example_text("duncehat-construct"))
    assert r.returncode == 0
    for needle in ("chi = 11", "h11 = 9", "moduli = 9", "dim M_O = 2", "d-semistable = 7",
                   "C0: (-1) + (-2) + 3 = 0"):
        assert needle in r.stdout
    assert "FAIL" not in r.stdout


def test_construct_report_without_e9():
    r = run("construct", "report", "-", stdin=io.dump_construct(duncehat_construct(False)))
    assert r.returncode == 1
    assert "== triple point formula: FAIL ==" in r.stdout


def test_construct_report_empty():
    r = run("construct", "report", "-", stdin='{"components": []}')
    assert r.returncode == 0 and "chi = 0" in r.stdout


def test_construct_report_json():
    r = run("construct", "report", "-", "--format", "json", "--diagonal", "normalized",
            stdin=io.example_text("duncehat-construct"))
    data = json.loads(r.stdout)
    assert data["status"] == "PASS"
    assert any(s["name"] == "inertia (normalized)" for s in data["sections"])


def test_obstruction_cases_output():
    r = run("obstruction", "cases")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    row2 = next(line for line in lines if line.strip().startswith("2\t"))
    cols = row2.strip().split("\t")
    assert cols[1] == "(3,2,-2)" and "coordinate point" in cols[2] and cols[3:] == ["9", "4"]
    row30 = next(line for line in lines if line.strip().startswith("3.0\t"))
    assert "not a coordinate point" in row30
    assert lines[-1].strip() == "9/2·deg(C) > 3·deg(C): contradiction"
    assert run("obstruction", "cases").stdout == r.stdout


def test_json_report_deterministic():
    a = run("obstruction", "cases", "--format", "json").stdout
    assert a == run("obstruction", "cases", "--format", "json").stdout
    assert json.loads(a)["status"] == "PASS"
