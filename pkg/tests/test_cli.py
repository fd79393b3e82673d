import json

import numpy as np
import pytest

import cli.commands as commands
from bounds import BoundId, BoundReport, BoundSummary
from cli import EXIT_FAILED, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, exit_code_for
from config import update_app_config
from linalg import BudgetExceededError, MatrixParseError, NoConvergenceError
from main import main


@pytest.fixture
def n_file(matrix_file, N):
    return matrix_file(N, "n.json")


@pytest.fixture
def d_file(matrix_file, D):
    return matrix_file(D, "d.json")


@pytest.mark.unit
def test_exit_code_mapping():
    assert exit_code_for(FileNotFoundError("x")) == EXIT_IO
    assert exit_code_for(NoConvergenceError("x")) == EXIT_NUMERICAL
    assert exit_code_for(BudgetExceededError("x")) == EXIT_NUMERICAL
    assert exit_code_for(np.linalg.LinAlgError("x")) == EXIT_NUMERICAL
    assert exit_code_for(MatrixParseError("x")) == EXIT_USAGE
    assert exit_code_for(ValueError("x")) == EXIT_USAGE
    with pytest.raises(KeyError):
        exit_code_for(KeyError("x"))


@pytest.mark.cli
def test_radius_command(n_file, capsys):
    assert main(["radius", n_file]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "0.5"
    assert lines[1].startswith("theta_star=")
    assert lines[2].startswith("certificate=[")
    assert lines[3].startswith("evaluations=")


@pytest.mark.cli
def test_radius_command_with_jacobi(n_file, capsys):
    assert main(["--eig-method", "jacobi", "radius", n_file, "--tol", "1e-6"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "0.5"


@pytest.mark.cli
def test_crawford_command(matrix_file, capsys):
    path = matrix_file(np.diag([1.0, 2.0]))
    assert main(["crawford", path]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "1"
    assert out[2] == "attained_inside=false"


@pytest.mark.cli
def test_dist_command(d_file, capsys):
    assert main(["dist", d_file]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "0.5 at lambda=0.5+0i"
    assert out[2] == "box_radius=2"


@pytest.mark.cli
def test_bounds_command_json(n_file, capsys):
    assert main(["bounds", n_file, n_file]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["format"] == "bounds-report/1"
    assert doc["all_hold"] is True
    assert len(doc["bounds"]) == 11
    assert doc["bounds"]["CLASSIC_NORM"]["center"] == pytest.approx(0.5)


@pytest.mark.cli
def test_bounds_command_numerical_failure(matrix_file, random_matrix, capsys):
    path = matrix_file(random_matrix(3), "a.json")
    update_app_config({"dist_budget": 10})
    assert main(["bounds", path, path]) == EXIT_NUMERICAL
    captured = capsys.readouterr()
    assert "numerical failure:" in captured.err
    assert "DIST_REFINED" in captured.err
    assert "bound violation" not in captured.err
    assert json.loads(captured.out)["bounds"]["DIST_REFINED"]["error"]


@pytest.mark.cli
def test_bounds_command_violation_outranks_failure(n_file, monkeypatch, capsys):
    reports = [
        BoundReport.failed(BoundId.DIST_REFINED, 1e-9, "BudgetExceededError: out of evaluations"),
        BoundReport.from_chain(BoundId.CLASSIC_NORM, 0.5, [("low", 0.6)], [("high", 1.0)], tol=1e-9),
    ]
    monkeypatch.setattr(commands, "eval_all", lambda pair, tol=None: BoundSummary(reports=reports))
    assert main(["bounds", n_file, n_file]) == EXIT_FAILED
    err = capsys.readouterr().err
    assert "bound violation: CLASSIC_NORM" in err
    assert "DIST_REFINED" not in err


@pytest.mark.cli
def test_bounds_command_csv_to_file(d_file, tmp_path):
    out = tmp_path / "bounds.csv"
    assert main(["bounds", d_file, d_file, "--format", "csv", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "# format=bounds-report/1"
    assert lines[1].startswith("bound_id,center,")
    assert len(lines) == 13


@pytest.mark.cli
def test_range_command(n_file, capsys, tmp_path):
    assert main(["range", n_file, "--points", "12"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "theta,re,im,support_value"
    assert len(lines) == 13

    out = tmp_path / "range.csv"
    assert main(["range", n_file, "--points", "12", "--out", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[0] == "theta,re,im,support_value"


@pytest.mark.cli
def test_equality_command(n_file, d_file, capsys):
    assert main(["equality", n_file, n_file, "--grid", "90"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["consistent"] is True
    assert main(["equality", d_file, d_file, "--which", "quarter"]) == EXIT_FAILED
    report = json.loads(capsys.readouterr().out)
    assert report["kind"] == "QUARTER_SQUARED"
    assert report["consistent"] is False


@pytest.mark.cli
def test_usage_errors(n_file, raw_file):
    assert main(["radius", raw_file("{broken")]) == EXIT_USAGE
    assert main(["radius", raw_file({"dim": 2, "re": [[1, 0]]})]) == EXIT_USAGE
    assert main(["range", n_file, "--points", "2"]) == EXIT_USAGE
    assert main(["radius", n_file, "--tol", "0"]) == EXIT_USAGE
    assert main(["equality", n_file, n_file, "--grid", "3"]) == EXIT_USAGE
    assert main(["range", n_file, "--points", "0"]) == EXIT_USAGE
    assert main(["equality", n_file, n_file, "--grid", "0"]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE
    assert main(["--eig-method", "qr", "radius", n_file]) == EXIT_USAGE


@pytest.mark.cli
def test_io_error(tmp_path):
    assert main(["radius", str(tmp_path / "missing.json")]) == EXIT_IO
    assert main(["dist", str(tmp_path / "missing.json")]) == EXIT_IO


@pytest.mark.cli
def test_size_limit_is_usage_error(matrix_file):
    big = matrix_file(np.eye(65), "big.json")
    assert main(["bounds", big, big]) == EXIT_USAGE
