import json

import pytest
from pydantic import ValidationError

from cli import TrialRecord, VerifyConfig, run_trial, run_trials, summarize
from cli.verify import exit_status, trial_plan, verify_document, write_report
from main import main


@pytest.fixture
def small_cfg():
    return VerifyConfig(trials=4, dims=[2, 3], master_seed=7, quiet=True,
                        ensembles=[("SQUARE_ZERO", "NORMAL"), ("GINIBRE", "UNITARY*2")])


@pytest.mark.unit
def test_config_validation():
    with pytest.raises(ValidationError):
        VerifyConfig(trials=0)
    with pytest.raises(ValidationError):
        VerifyConfig(trials=1, dims=[70])
    with pytest.raises(ValidationError):
        VerifyConfig(trials=1, dims=[])
    with pytest.raises(ValidationError):
        VerifyConfig(trials=1, ensembles=[("GINIBRE", "TRIANGULAR")])
    with pytest.raises(ValidationError):
        VerifyConfig(trials=1, tol=0.0)
    cfg = VerifyConfig(trials=1, ensembles=[("normal", "unitary*2")])
    assert cfg.ensembles == [("NORMAL", "UNITARY*2")]


@pytest.mark.unit
def test_trial_plan_is_deterministic(small_cfg):
    assert trial_plan(small_cfg, 3) == trial_plan(small_cfg, 3)
    assert trial_plan(small_cfg, 0)[:2] == ("SQUARE_ZERO", "NORMAL")
    assert trial_plan(small_cfg, 1)[:2] == ("GINIBRE", "UNITARY*2")
    for i in range(4):
        _, _, dim_a, dim_b, seed_a, seed_b = trial_plan(small_cfg, i)
        assert dim_a in (2, 3) and dim_b in (2, 3)
        assert seed_a != seed_b


@pytest.mark.integration
def test_square_zero_trial_hits_half_norm_case(small_cfg):
    record = run_trial(small_cfg, 0)
    assert record.error is None
    assert not record.violations
    assert len(record.reports) == 11
    assert record.equality_cases["half_norm_product"] < 1e-6
    assert [e.consistent for e in record.equality] == [True, True]
    assert record.remarks.half_premise
    assert record.corollary_holds and record.double_radius_remark_holds


@pytest.mark.integration
def test_small_run_is_clean_and_reproducible(small_cfg):
    records = run_trials(small_cfg)
    assert [r.trial for r in records] == [0, 1, 2, 3]
    summary = summarize(records)
    assert summary["violations"] == 0
    assert summary["errored_trials"] == 0
    assert summary["bound_reports"] == 44
    assert exit_status(summary) == 0
    again = run_trials(small_cfg)
    assert [r.diffable() for r in again] == [r.diffable() for r in records]


@pytest.mark.integration
def test_parallel_run_matches_serial(small_cfg):
    serial = run_trials(small_cfg)
    parallel = run_trials(small_cfg.model_copy(update={"workers": 2}))
    assert [r.diffable() for r in parallel] == [r.diffable() for r in serial]


@pytest.mark.unit
def test_exit_status():
    base = {"trials": 100, "violations": 0, "errored_trials": 0}
    assert exit_status(base) == 0
    assert exit_status({**base, "violations": 1, "errored_trials": 50}) == 1
    assert exit_status({**base, "errored_trials": 1}) == 0
    assert exit_status({**base, "errored_trials": 2}) == 3


@pytest.mark.unit
def test_summarize_counts_errors():
    records = [
        TrialRecord(trial=0, ensemble_a="GINIBRE", ensemble_b="GINIBRE", dim_a=2, dim_b=2,
                    seed_a=1, seed_b=2, error="NO_CONVERGENCE"),
        TrialRecord(trial=1, ensemble_a="GINIBRE", ensemble_b="GINIBRE", dim_a=2, dim_b=2, seed_a=3, seed_b=4),
    ]
    summary = summarize(records)
    assert summary["trials"] == 2
    assert summary["errored_trials"] == 1
    assert summary["violations"] == 0
    assert set(summary["tightest_upper_counts"]) >= {"CLASSIC_NORM", "CRAWFORD_GAP"}


@pytest.mark.integration
def test_reports_written(small_cfg, tmp_path):
    cfg = small_cfg.model_copy(update={"trials": 2})
    records = run_trials(cfg)
    summary = summarize(records)

    json_cfg = cfg.model_copy(update={"out_path": str(tmp_path / "report.json")})
    write_report(json_cfg, records, summary)
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["format"] == "verify-report/1"
    assert len(doc["diffable"]["records"]) == 2
    assert "wall_time" not in doc["diffable"]["records"][0]
    assert len(doc["timing"]["wall_time"]) == 2
    assert verify_document(cfg, records, summary)["diffable"]["config"]["master_seed"] == 7

    csv_cfg = cfg.model_copy(update={"out_path": str(tmp_path / "report.csv"), "format": "csv"})
    write_report(csv_cfg, records, summary)
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines[0] == "# format=verify-report/1"
    assert lines[1] == "trial,ensemble_a,ensemble_b,dim_a,dim_b,bound_id,center,min_slack,holds"
    assert len(lines) == 2 + 22


@pytest.mark.cli
def test_verify_command(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code = main(["verify", "--trials", "3", "--dims", "2", "--ensembles", "SQUARE_ZERO:SELFADJOINT",
                 "--seed", "11", "--quiet", "--out", str(out)])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["trials"] == 3
    assert summary["violations"] == 0
    assert out.exists()
    assert (tmp_path / "logs" / "verify.log").exists()


@pytest.mark.cli
def test_verify_usage_errors(tmp_path):
    assert main(["verify", "--trials", "0"]) == 2
    assert main(["verify", "--trials", "1", "--ensembles", "GINIBRE"]) == 2
    assert main(["verify", "--trials", "1", "--dims", "two"]) == 2
    assert main(["verify", "--trials", "1", "--quiet", "--out", str(tmp_path / "no" / "dir.json")]) == 4
