import json
import math

import pytest

from main import ROUTES, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_classes(capsys):
    code, out, _ = run(capsys, "graph")
    assert code == 0
    assert "{IAF, IAFPrime}" in out
    assert "{Rolle, TAF, DarbouxAndSVD}" in out
    assert "FCD -> SVD" in out


def test_graph_implies(capsys):
    code, out, _ = run(capsys, "graph", "--implies", "FCD", "SVD")
    assert code == 0
    assert out == "FCD does not imply SVD\n"
    code, out, _ = run(capsys, "graph", "--implies", "IAFG", "FCD", "--format", "json")
    assert json.loads(out)["implies"] is True


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--dot")
    assert code == 0
    assert out.startswith("digraph")


def test_witness_csv(capsys):
    code, out, _ = run(capsys, "witness", "--catalog", "identity", "--interval", "0", "1",
                       "--levels", "10", "--format", "csv", "--exact")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,a_n,b_n,f_a_n,f_b_n,slope"
    assert len(lines) == 12
    assert lines[-1] == "10,0,1/1024,0,1/1024,1"


def test_witness_on_expression(capsys):
    code, out, _ = run(capsys, "witness", "--fn", "x^2*sin(1/x)", "--interval", "0.1", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["a_seq"]) == 41
    assert data["deriv_check"] is True


def test_equal_endpoint_values_is_an_analysis_error(capsys):
    code, _, err = run(capsys, "witness", "--fn", "x^2", "--interval", "-1", "1")
    assert code == 1
    assert "EqualEndpointValues" in err


@pytest.mark.parametrize("argv", [
    ["witness", "--fn", "x^2", "--catalog", "identity", "--interval", "0", "1"],
    ["witness", "--interval", "0", "1"],
    ["witness", "--fn", "x^2+", "--interval", "0", "1"],
    ["witness", "--fn", "y", "--interval", "0", "1"],
    ["witness", "--catalog", "nope", "--interval", "0", "1"],
    ["witness", "--catalog", "identity"],
    ["witness", "--catalog", "identity", "--interval", "1", "0"],
    ["witness", "--catalog", "identity", "--interval", "0", "one"],
    ["graph", "--format", "csv"],
    ["no-such-command"],
    ["slope", "--fn", "x^2", "--catalog", "identity", "--points", "1", "3"],
    ["polyop", "--n", "0"],
    ["polyop", "--n", "-3"],
    ["witness", "--fn", "x^9^9^9", "--interval", "0", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_check_iaf_defaults_to_json(capsys):
    code, out, _ = run(capsys, "check-iaf", "--fn", "sin(x)", "--interval", "0", "2", "--k", "1")
    assert code == 0
    assert json.loads(out)["holds"] is True


def test_failed_check_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "check-iaf", "--fn", "sin(x)", "--interval", "0", "2", "--k", "0.1")
    assert code == 1
    data = json.loads(out)
    assert data["holds"] is False
    assert data["counter_witness"]["d"] == pytest.approx(math.sin(2.0))


def test_exact_check_has_zero_margin(capsys):
    code, out, _ = run(capsys, "check-iaf", "--catalog", "identity", "--interval", "0", "1", "--k", "1", "--exact")
    assert code == 0
    assert json.loads(out)["margin"] == "0"


def test_check_iafp_and_maja(capsys):
    code, out, _ = run(capsys, "check-iafp", "--fn", "x^2", "--interval", "0", "1", "--m", "0", "--M", "2")
    assert code == 0
    assert json.loads(out)["side"] == "lower"
    code, _, _ = run(capsys, "check-maja", "--fn", "x^2", "--interval", "0", "1", "--M", "0.5")
    assert code == 1


def test_check_iafg(capsys):
    code, out, _ = run(capsys, "check-iafg", "--fn", "sin(x)", "--g-fn", "x", "--interval", "0", "2")
    assert code == 0
    code, _, _ = run(capsys, "check-iafg", "--fn", "sin(x)", "--interval", "0", "2")
    assert code == 2


def test_refute_iaf(capsys):
    code, out, _ = run(capsys, "refute-iaf", "--fn", "sin(x)", "--interval", "0", "1", "--k", "0.5", "--format", "json")
    assert code == 0
    assert json.loads(out)["refuted"] is True
    code, out, _ = run(capsys, "refute-iaf", "--fn", "sin(x)", "--interval", "0", "1", "--k", "1", "--format", "json")
    assert code == 1
    assert json.loads(out)["refuted"] is False


def test_chain_and_step_floor(capsys):
    code, out, _ = run(capsys, "chain", "--fn", "sin(x)", "--interval", "0", "1", "--M", "1", "--epsilon", "0.01",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "i,t_i,f_t_i,slope"
    code, _, err = run(capsys, "chain", "--catalog", "identity", "--interval", "0", "1", "--M", "0", "--epsilon", "0.5")
    assert code == 1
    assert "StepFloorReached" in err


def test_rolle_accepts_pi_in_the_interval(capsys):
    code, out, _ = run(capsys, "rolle", "--fn", "sin(x)", "--interval", "0", "pi", "--format", "json")
    assert code == 0
    assert json.loads(out)["c"] == pytest.approx(math.pi / 2, abs=1e-6)


def test_darboux(capsys):
    code, out, _ = run(capsys, "darboux", "--fn", "x^3", "--interval", "0", "1", "--v", "0.75", "--format", "json")
    assert code == 0
    assert json.loads(out)["c"] == pytest.approx(0.5, abs=1e-6)


def test_counterexample_table(capsys):
    code, out, _ = run(capsys, "slope", "--counterexample", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,x_n,y_n,slope"
    assert len(lines) == 5


def test_slope_between_points(capsys):
    code, out, _ = run(capsys, "slope", "--fn", "x^2", "--points", "1", "3", "--exact", "--format", "json")
    assert code == 0
    assert json.loads(out)["slope"] == "4"


def test_strict_probe_rejects_the_counterexample(capsys):
    code, out, _ = run(capsys, "strict-probe", "--catalog", "fpq", "--params", "2", "1", "--at", "0",
                       "--format", "json")
    assert code == 1
    assert json.loads(out)["verdict"] == "NotStrict"


def test_staircase_csv(capsys):
    code, out, _ = run(capsys, "staircase", "--grid", "5", "--tol", "1e-3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,f_x"
    assert lines[1] == "0.0,0.0"
    assert lines[3] == "0.5,0.5"
    assert lines[-1] == "1.0,1.0"


def test_staircase_level_cap(capsys):
    code, _, err = run(capsys, "staircase", "--level", "31")
    assert code == 1
    assert "LevelTooDeep" in err
    code, _, err = run(capsys, "cantor-intervals", "--level", "17")
    assert code == 1
    assert "LevelTooDeep" in err


def test_cantor_intervals(capsys):
    code, out, _ = run(capsys, "cantor-intervals", "--level", "2", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["intervals"]) == 4


def test_polyop(capsys):
    code, out, _ = run(capsys, "polyop", "--n", "3", "--poly", "1", "2", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 3
    assert data["kernel_dim"] == 1
    assert data["has_primitive"] is True
    assert data["top_monomial_in_image"] is False


def test_out_writes_a_file(capsys, tmp_path):
    target = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "witness", "--catalog", "identity", "--interval", "0", "1", "--levels", "4",
                       "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("n,a_n,b_n")


def test_bare_out_name_goes_to_the_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("REALFN_OUTPUT_DIR", str(tmp_path))
    code, _, _ = run(capsys, "cantor-intervals", "--level", "1", "--format", "csv", "--out", "k1.csv")
    assert code == 0
    assert (tmp_path / "k1.csv").read_text(encoding="utf-8") == "k,lo,hi\n0,0,1/3\n1,2/3,1\n"


EVERY_COMMAND = [
    ["witness", "--fn", "sin(x)", "--interval", "0", "3", "--format", "csv"],
    ["lagrange", "--fn", "x^3-x", "--interval", "0", "2", "--levels", "12", "--format", "csv"],
    ["refute-iaf", "--fn", "sin(x)", "--interval", "0", "1", "--k", "0.5", "--format", "json"],
    ["chain", "--fn", "sin(x)", "--interval", "0", "1", "--M", "1", "--epsilon", "0.01", "--format", "csv"],
    ["rolle", "--fn", "x^2-x", "--interval", "0", "1", "--format", "json"],
    ["mvt", "--catalog", "monomial", "--params", "3", "--interval", "0", "1", "--format", "json"],
    ["darboux", "--fn", "x^3", "--interval", "0", "1", "--v", "0.75", "--format", "json"],
    ["slope", "--fn", "x^2", "--at", "0", "--levels", "4", "--format", "json"],
    ["strict-probe", "--catalog", "fpq", "--params", "2", "1", "--at", "0", "--levels", "3", "--format", "json"],
    ["check-iaf", "--fn", "sin(x)", "--interval", "0", "2", "--k", "1"],
    ["check-iafp", "--fn", "x^2", "--interval", "0", "1", "--m", "0", "--M", "2"],
    ["check-iafg", "--fn", "sin(x)", "--g-fn", "x", "--interval", "0", "2"],
    ["check-maja", "--fn", "x^2", "--interval", "0", "1", "--M", "0.5"],
    ["staircase", "--grid", "50", "--format", "csv"],
    ["cantor-intervals", "--level", "3", "--format", "csv"],
    ["polyop", "--n", "4", "--poly", "0", "0", "0", "0", "1", "--format", "json"],
    ["graph", "--dot"],
]


def test_every_command_is_covered():
    assert sorted(argv[0] for argv in EVERY_COMMAND) == sorted(ROUTES)


@pytest.mark.parametrize("argv", EVERY_COMMAND, ids=[argv[0] for argv in EVERY_COMMAND])
def test_output_is_deterministic(capsys, argv):
    code, first, _ = run(capsys, *argv)
    again, second, _ = run(capsys, *argv)
    assert code == again
    assert first == second
    assert first
