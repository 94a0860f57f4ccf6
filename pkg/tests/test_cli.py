"""End-to-end command line tests, run in process through main()."""

import json

import pytest

from tfpoly.algebra import MultiPoly
from tfpoly.cli import main
from tfpoly.fixtures import FIXTURE_TEXTS, fixture
from tfpoly.invariants import psi_family


@pytest.fixture
def graph_file(tmp_path):
    def write(name: str) -> str:
        path = tmp_path / f"{name}.graph"
        path.write_text(FIXTURE_TEXTS[name])
        return str(path)

    return write


def test_tutte_text_output(graph_file, capsys):
    assert main(["tutte", graph_file("k3")]) == 0
    assert capsys.readouterr().out.strip() == "x^2 + x + y"


def test_omega_brute_on_loop(graph_file, capsys):
    rc = main(["omega", "--via", "brute", "--p", "2", "--q", "3", graph_file("loop")])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "2"


def test_omega_evaluated_at_orders(graph_file, capsys):
    rc = main(["omega", "--p", "2", "--q", "2", graph_file("k3")])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "4"


def test_chromatic_text_output(graph_file, capsys):
    assert main(["chromatic", graph_file("k3")]) == 0
    assert capsys.readouterr().out.strip() == "t^3 - 3*t^2 + 2*t"


def test_kappa_text_output(graph_file, capsys):
    assert main(["kappa", graph_file("k3")]) == 0
    assert capsys.readouterr().out.strip() == "x^2 - 3*x + y + 1"


def test_json_payload_round_trips(graph_file, capsys):
    path = graph_file("k3")
    assert main(["--json", "tutte", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["invariant"] == "tutte"
    assert payload["graph"] == path
    back = MultiPoly.from_json(payload["variables"], payload["poly"])
    x, y = MultiPoly.var("x"), MultiPoly.var("y")
    assert back == x**2 + x + y


def test_json_flag_position_is_irrelevant(graph_file, capsys):
    path = graph_file("k3")
    assert main(["--json", "tutte", path]) == 0
    before = capsys.readouterr().out
    assert main(["tutte", "--json", path]) == 0
    assert capsys.readouterr().out == before


def test_json_keeps_rational_coefficients_exact(graph_file, capsys):
    path = graph_file("k4me")
    assert main(["psi", "--integral", "--json", path]) == 0
    raw = capsys.readouterr().out
    assert '"14/3"' in raw
    payload = json.loads(raw)
    back = MultiPoly.from_json(payload["variables"], payload["poly"])
    assert back == psi_family(fixture("k4me"), "psi_z")


def test_quadrant_values(graph_file, capsys):
    path = graph_file("k3")
    for quadrant, want in (("++", "8"), ("-+", "4"), ("+-", "4"), ("--", "0")):
        rc = main(["tutte-values", "--p", "2", "--q", "2", f"--quadrant={quadrant}", path])
        assert rc == 0
        assert capsys.readouterr().out.strip() == want


def test_missing_file_is_input_error(capsys):
    assert main(["tutte", "/no/such/file.graph"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.graph"
    path.write_text("v 2\ne 0 5\n")
    assert main(["tutte", str(path)]) == 2
    err = capsys.readouterr().err
    assert "error:" in err and "vertex 5" in err


def test_brute_requires_group_orders(graph_file, capsys):
    assert main(["omega", "--via", "brute", graph_file("k3")]) == 2
    assert "needs --p and --q" in capsys.readouterr().err


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "whitney"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS criterion 7:")


def test_verify_json_payload(capsys):
    assert main(["--json", "verify", "--suite", "integrals"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert [row["criterion"] for row in payload["results"]] == [8]
    assert all(row["passed"] for row in payload["results"])


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "everything"])
    assert exc.value.code == 2


def test_jobs_do_not_change_output(graph_file, capsys):
    path = graph_file("k3")
    assert main(["psi", "--jobs", "1", path]) == 0
    serial = capsys.readouterr().out
    assert main(["psi", "--jobs", "4", path]) == 0
    assert capsys.readouterr().out == serial


def test_guard_env_variable(graph_file, capsys, monkeypatch):
    monkeypatch.setenv("TFPOLY_GUARD", "2")
    path = graph_file("k3")
    rc = main(["omega", "--via", "brute", "--p", "2", "--q", "2", path])
    assert rc == 2
    assert "guard" in capsys.readouterr().err


def test_guard_flag_beats_env(graph_file, capsys, monkeypatch):
    monkeypatch.setenv("TFPOLY_GUARD", "2")
    path = graph_file("k3")
    rc = main(
        ["--guard", "1000000", "omega", "--via", "brute", "--p", "2", "--q", "2", path]
    )
    assert rc == 0
    assert capsys.readouterr().out.strip() == "4"


def test_classify_orientations_lines(graph_file, capsys):
    assert main(["classify-orientations", graph_file("k3")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    rows = [json.loads(line) for line in lines]
    assert sorted(row["size"] for row in rows) == [2, 3, 3]
    for row in rows:
        assert row["b_size"] + row["c_size"] == 3
        assert len(row["representative"]) == 3
