import io
import json

import pytest

from invplanes import GF, QQ, QSqrt, cli
from invplanes.field import Field
from invplanes.matrix import Matrix
from invplanes.oracle import ClaimReport
from invplanes.poly import BivarPoly
from invplanes.rmodule import RMat, hat, tilde

from conftest import SIGN_CYCLE


@pytest.fixture
def sign_cycle_json(tmp_path):
    path = tmp_path / "A.json"
    path.write_text(json.dumps({"field": {"kind": "q"}, "rows": [[str(x) for x in r] for r in SIGN_CYCLE]}))
    return str(path)


def run(*argv):
    status, text = cli.run(list(argv))
    return status, text


def run_json(*argv):
    status, text = run(*argv)
    assert status == 0, text
    return json.loads(text)


def test_compute_lists_two_proper_classes(sign_cycle_json):
    out = run_json("compute", "--field", "qsqrt:2", sign_cycle_json)
    assert out["charpoly"] == "T^4+1"
    assert [(c["class"]["trace"], c["class"]["det"]) for c in out["proper"]] == [("sqrt(2)", "1"), ("-sqrt(2)", "1")]
    assert all(c["plane"]["u"] and c["plane"]["v"] for c in out["proper"])
    assert [c["dim"] for c in out["primary_components"]] == [2, 2]


def test_compute_output_feeds_verify_and_test(sign_cycle_json, tmp_path):
    out = run_json("compute", "--field", "qsqrt:2", sign_cycle_json)
    for cls in out["proper"]:
        plane = tmp_path / "plane.json"
        plane.write_text(json.dumps(cls["plane"]))
        v = run_json("verify", "--field", "qsqrt:2", sign_cycle_json, "--plane", str(plane))
        assert v["invariant"] and v["proper"]
        assert v["class"] == cls["class"]
        t = run_json("test", "--field", "qsqrt:2", sign_cycle_json, "--lambda", json.dumps(cls["companion"]))
        assert t["verdict"] == "proper"
        assert t["necessary_condition"] == "0"
        assert t["r_eigen"]["regular"]


def test_superchar_coefficients(sign_cycle_json):
    out = run_json("superchar", "--field", "q", sign_cycle_json)
    F = BivarPoly.from_json(Field.from_json(out["field"]), out)
    t, d = BivarPoly.t(QQ), BivarPoly.d(QQ)
    assert F == t * t * t * t - 4 * d * t * t + (d * d + 1) * (d * d + 1)


def test_verify_diagonal(tmp_path):
    a = tmp_path / "diag12.json"
    a.write_text(json.dumps([["1", "0"], ["0", "2"]]))
    e = tmp_path / "e1e2.json"
    e.write_text(json.dumps({"u": ["1", "0"], "v": ["0", "1"]}))
    out = run_json("verify", "--field", "q", str(a), "--plane", str(e))
    assert out["lambda"] == [["1", "0"], ["0", "2"]]
    assert not out["proper"]


def test_verify_non_invariant_plane():
    out = run_json("verify", "--field", "q", "[[1,1,0],[0,1,0],[0,0,2]]", "--plane", '{"u":[0,1,0],"v":[0,0,1]}')
    assert out == {"invariant": False, "lambda": None}


@pytest.mark.parametrize(
    "matrix, lam, verdict",
    [
        ("[[1,1],[-2,-1]]", "[[0,-1],[1,0]]", "proper"),
        ("[[1,0],[0,2]]", "[[1,0],[0,5]]", "none"),
        ("[[1,0],[0,2]]", "[[2,0],[0,1]]", "improper"),
    ],
)
def test_test_verdicts(matrix, lam, verdict):
    out = run_json("test", "--field", "q", matrix, "--lambda", lam)
    assert out["verdict"] == verdict
    assert (out["certificate"] is None) == (verdict == "none")


def test_counterexample_det_test_reported():
    out = run_json("test", "--field", "q", "[[1,1],[-2,-1]]", "--lambda", "[[0,-1],[1,0]]")
    assert out["det_test"] == "-1"


def test_tilde_hat_xmatrix_round_trip(sign_cycle_json):
    A = Matrix(QQ, SIGN_CYCLE)
    assert RMat.from_json(run_json("tilde", sign_cycle_json)) == tilde(A)
    assert Matrix.from_json(run_json("hat", sign_cycle_json)) == hat(A)
    assert Matrix.from_json(run_json("xmatrix", sign_cycle_json)) == Matrix.block_diag(A, A)


def test_field_flag_overrides_file(sign_cycle_json):
    out = run_json("hat", "--field", "gf:3", sign_cycle_json)
    assert out["field"] == {"kind": "gf", "p": 3}
    assert out["rows"][0] == ["0", "0", "0", "1"]
    assert out["rows"][1] == ["0", "0", "2", "0"]


def test_factor_command():
    out = run_json("factor", "--field", "gf:5", "T^4+1")
    assert [f["factor"] for f in out["factors"]] == ["T^2+2", "T^2+3"]
    out = run_json("factor", "--field", "q", "2*T^2-2")
    assert out["leading"] == "2"
    assert [f["factor"] for f in out["factors"]] == ["T-1", "T+1"]


def test_oracle_command(sign_cycle_json):
    out = run_json("oracle", "--field", "gf:3", sign_cycle_json)
    assert out["agree"]
    assert len(out["planes"]) == 2
    assert out["proper_bruteforce"] == out["proper_factorization"]
    status, _ = run("oracle", "--field", "q", sign_cycle_json)
    assert status == 2


def test_claims_command_and_determinism():
    a = run("claims", "--field", "gf:3", "--n", "2", "--samples", "3", "--seed", "4")
    b = run("claims", "--field", "gf:3", "--n", "2", "--samples", "3", "--seed", "4")
    assert a == b
    assert a[0] == 0
    assert json.loads(a[1])["proved_violations"] == 0


def test_claims_exit_one_on_violation(monkeypatch):
    def broken(field, n, samples, seed, budget, matrices):
        report = ClaimReport(field, n, samples, seed)
        report.claims["theorem"].record(False, {"A": "x"})
        return report

    monkeypatch.setattr(cli, "claim_sweep", broken)
    status, text = run("claims", "--field", "gf:3", "--n", "2")
    assert status == 1
    assert json.loads(text)["claims"]["theorem"]["violations"] == 1


def test_compute_is_byte_deterministic(sign_cycle_json):
    a = run("compute", "--field", "gf:3", "--seed", "5", sign_cycle_json)
    b = run("compute", "--field", "gf:3", "--seed", "5", sign_cycle_json)
    assert a == b


def test_stdin_input(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO('{"field": {"kind": "gf", "p": 5}, "rows": [["1","2"],["3","4"]]}'))
    out = run_json("superchar", "-")
    assert out["field"] == {"kind": "gf", "p": 5}


def test_text_format_uses_bracketed_rows():
    status, text = run("hat", "--format", "text", "--field", "q", "[[1,2],[3,4]]")
    assert status == 0
    assert "rows: [[1, 3], [2, 4]]" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "[[1,2],[3,4]]"],
        ["compute", "--field", "gf:2", "[[1,2],[3,4]]"],
        ["compute", "--field", "q", "[[1,2,3],[3,4,5]]"],
        ["compute", "--field", "q", "/nonexistent/A.json"],
        ["compute", "--field", "q", "[[1,\"x\"],[3,4]]"],
        ["hat", "--field", "q", "[[1,0,0],[0,1,0],[0,0,1]]"],
        ["test", "--field", "q", "[[1,0],[0,1]]", "--lambda", "[[1,2,3]]"],
        ["verify", "--field", "q", "[[1,0],[0,1]]", "--plane", '{"u":[1,0,0],"v":[0,1,0]}'],
        ["factor", "--field", "q", "0"],
        ["factor", "T+1"],
        ["claims", "--field", "gf:5", "--n", "6"],
    ],
)
def test_validation_errors_exit_two(argv):
    status, text = run(*argv)
    assert status == 2
    assert text.startswith("error:")


def test_main_prints_and_returns_status(capsys):
    assert cli.main(["factor", "--field", "gf:3", "T^2+1"]) == 0
    assert json.loads(capsys.readouterr().out)["factors"][0]["factor"] == "T^2+1"
    assert cli.main(["factor", "--field", "gf:4", "T"]) == 2
    assert "error" in capsys.readouterr().err


def test_json_output_reads_back_as_elements(sign_cycle_json):
    out = run_json("compute", "--field", "qsqrt:2", sign_cycle_json)
    K = QSqrt(2)
    for cls in out["proper"]:
        for x in cls["plane"]["u"] + cls["plane"]["v"]:
            assert str(K(x)) == x
    assert GF(3).to_json() == Field.from_flag("gf:3").to_json()
