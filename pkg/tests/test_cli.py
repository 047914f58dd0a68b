import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from klms.cli import main


def schema(name):
    return json.loads(files("klms").joinpath("schemas", name).read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


@pytest.mark.parametrize("argv,pretty", [
    (["kl", "--n", "4", "--x", "1234", "--y", "3412"], "1 + q"),
    (["kl", "--n", "3", "--x", "123", "--y", "321"], "1"),
    (["kl", "--n", "3", "--x", "321", "--y", "123"], "0"),
    (["kl", "--x", "1234", "--y", "4231"], "1 + q"),
])
def test_kl(capsys, argv, pretty):
    code, js, err = run(capsys, *argv)
    assert code == 0
    assert js["pretty"] == pretty
    jsonschema.validate(js, schema("kl.json"))
    assert pretty in err


def test_kl_json_polynomial(capsys):
    _, js, _ = run(capsys, "kl", "--n", "4", "--x", "1234", "--y", "3412")
    assert js["poly"] == [[0, 1], [2, 1]]
    assert js["mu"] == 0
    _, js, _ = run(capsys, "kl", "--x", "1324", "--y", "3412")
    assert js["mu"] == 1


def test_double_parabolic(capsys):
    code, js, _ = run(capsys, "kl", "--x", "1234", "--y", "1324", "--J1", "1,3", "--J2", "1,3")
    assert code == 0
    assert js["max_elements"] == ["2143", "4231"]
    assert js["pretty"] == "1 + q"
    jsonschema.validate(js, schema("kl.json"))


def test_pkl(capsys):
    code, js, _ = run(capsys, "pkl", "--x", "1234", "--y", "2134", "--J", "2,3")
    assert code == 0 and js["pretty"] == "1" and js["J"] == [2, 3]
    jsonschema.validate(js, schema("kl.json"))
    code, js, _ = run(capsys, "pkl", "--x", "123", "--y", "213", "--J1", "", "--J2", "")
    assert code == 0 and js["pretty"] == "1"


def test_quiet(capsys):
    code, _, err = run(capsys, "--quiet", "kl", "--x", "12", "--y", "21")
    assert code == 0 and err == ""
    code, _, err = run(capsys, "kl", "--x", "12", "--y", "21", "--quiet")
    assert code == 0 and err == ""


@pytest.mark.parametrize("argv", [
    ["kl", "--x", "12x", "--y", "21"],
    ["kl", "--n", "3", "--x", "12", "--y", "21"],
    ["kl", "--x", "123", "--y", "321", "--J1", "7"],
    ["poset", "[1,2"],
    ["verify", "--suite", "realization", "--span", "5..1"],
    ["phi", "--w", "21"],
])
def test_parse_errors_exit_2(capsys, argv):
    assert main(argv) == 2


@pytest.mark.parametrize("argv", [["verify", "--suite", "bogus"], ["nope"], []])
def test_unknown_suite_or_command_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["kl", "--x", "321", "--y", "123", "--J1", "1", "--J2", ""],
    ["pkl", "--x", "213", "--y", "321", "--J", "1"],
    ["phi", "--n", "3", "--J1", "1", "--J2", "", "--w", "213"],
    ["phiinv", "--n", "2", "--ms", "[5,6]+[7,8]"],
    ["phi", "--baseline", "[1,2]+[3,4]", "--w", "12"],
    ["reduce", "0"],
])
def test_precondition_errors_exit_3(capsys, argv):
    assert main(argv) == 3


def test_enumeration_cap_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("KLMS_ENUM_CAP", "2")
    assert main(["poset", "[0,2]+[1,3]+[2,4]"]) == 4


def test_realization_failure_exit_5(capsys, monkeypatch):
    from klms import cli
    from klms.errors import RealizationError

    def broken(a):
        raise RealizationError("forced", {"multisegment": str(a), "reason": "forced"})

    monkeypatch.setattr(cli, "interval_realization", broken)
    code, js, _ = run(capsys, "reduce", "[1,2]+[3,4]")
    assert code == 5
    assert js["realization_verified"] is False
    assert js["counterexample"]["reason"] == "forced"
    jsonschema.validate(js, schema("reduce.json"))


@pytest.mark.parametrize("text,size,edges", [
    ("[1,2]+[2,3]", 2, 1), ("2*[0,1]+2*[1,2]", 3, 2), ("[1,2]", 1, 0),
])
def test_poset(capsys, tmp_path, text, size, edges):
    dot = tmp_path / "s.dot"
    code, js, _ = run(capsys, "poset", text, "--json", "--dot", str(dot))
    assert code == 0
    assert js["size"] == size and len(js["covers"]) == edges
    jsonschema.validate(js, schema("poset.json"))
    body = dot.read_text()
    assert body.startswith("digraph") and body.count("->") == edges


def test_poset_dot_parses_as_graph(capsys, tmp_path):
    pydot = pytest.importorskip("pydot")
    dot = tmp_path / "s.dot"
    main(["poset", "2*[0,1]+2*[1,2]", "--dot", str(dot)])
    (g,) = pydot.graph_from_dot_file(str(dot))
    nodes = [n for n in g.get_nodes() if n.get_name() not in ("node", "graph", "edge")]
    assert len(nodes) == 3 and len(g.get_edges()) == 2


@pytest.mark.parametrize("text,chain,parabolic", [
    ("[1,2]+[3,4]", ["[3,3]"], "[1,3]+[3,4]"),
    ("[1,3]+[1,4]+[2,5]+[2,6]", [], "[1,3]+[1,4]+[2,5]+[2,6]"),
])
def test_reduce(capsys, text, chain, parabolic):
    code, js, _ = run(capsys, "reduce", text)
    assert code == 0
    assert js["chain"] == chain and js["parabolic"] == parabolic
    assert js["realization_verified"] is True
    jsonschema.validate(js, schema("reduce.json"))


def test_reduce_masks(capsys):
    _, js, _ = run(capsys, "reduce", "[1,3]+[1,4]+[2,5]+[2,6]")
    assert js["masks"] == {"J1": [], "J2": [1, 3]}


def test_phi_and_inverse(capsys):
    base = "[1,3]+[1,4]+[2,5]+[2,6]"
    code, js, _ = run(capsys, "phi", "--baseline", base, "--w", "2314")
    assert code == 0 and js["multisegment"] == "[1,4]+[1,5]+[2,3]+[2,6]"
    jsonschema.validate(js, schema("phi.json"))
    code, js, _ = run(capsys, "phiinv", "--baseline", base, "--ms", "[1,4]+[1,5]+[2,3]+[2,6]")
    assert code == 0 and js["w"] == "2314"
    jsonschema.validate(js, schema("phi.json"))
    code, js, _ = run(capsys, "phi", "--n", "2", "--w", "21")
    assert js["multisegment"] == "[1,3]+[2,2]"


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "relations", "--n", "4"],
    ["verify", "--suite", "param", "--n", "4"],
    ["verify", "--suite", "realization", "--max-segments", "3", "--span", "0..5"],
])
def test_verify(capsys, argv):
    code, js, err = run(capsys, *argv)
    assert code == 0 and js["ok"]
    assert js["reports"][0]["failure_count"] == 0
    jsonschema.validate(js, schema("verify.json"))
    assert "[PASS]" in err


def test_verify_failure_exit_1(capsys, monkeypatch):
    from klms import cli
    from klms.report import Report

    def bad(n):
        rep = Report("param", {"n": n})
        rep.fail(check="forced")
        return rep

    monkeypatch.setattr(cli, "verify_param_suite", bad)
    code, js, err = run(capsys, "verify", "--suite", "param", "--n", "2")
    assert code == 1 and not js["ok"]
    assert "[FAIL]" in err


def test_module_entry_point_is_byte_identical():
    argv = [sys.executable, "-m", "klms", "poset", "[0,2]+[1,3]+[2,4]"]
    a = subprocess.run(argv, capture_output=True, check=True)
    b = subprocess.run(argv, capture_output=True, check=True)
    assert a.stdout == b.stdout and a.stderr == b.stderr
    assert json.loads(a.stdout)["size"] > 1
