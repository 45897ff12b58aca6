"""CLI: configs, reports, determinism, exit codes, file input."""

import json

import pytest

from walg.cli import CHECK_NAMES, JobConfig, main, render_report, run
from walg.errors import ConfigError


def strip_timing(report):
    out = dict(report)
    out.pop("timing", None)
    return out


def test_run_sl2_theorem():
    config = JobConfig(algebra="sl2", nilpotent="regular", ell="zero",
                       max_degree=16, checks=["theorem"])
    report = run(config)
    assert report["status"] == "pass"
    dims = report["checks"][0]["details"]["gr_dims"]
    assert dims == [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_run_sl3_full_sweep():
    config = JobConfig(algebra="sl3", nilpotent="minimal", ell="lagrangian-auto",
                       max_degree=6,
                       checks=["theorem", "poisson", "cohomology", "whittaker",
                               "center"])
    report = run(config)
    assert report["status"] == "pass"
    names = [c["name"] for c in report["checks"]]
    assert names == ["theorem", "poisson", "cohomology", "whittaker", "center"]
    json.dumps(report)  # the whole report must be JSON-serializable


def test_run_ell_independence_from_zero():
    config = JobConfig(algebra="sl3", nilpotent="minimal", ell="zero",
                       max_degree=6, checks=["ell-independence"])
    report = run(config)
    assert report["status"] == "pass"


def test_report_determinism():
    config = JobConfig(algebra="sl2", nilpotent="regular", ell="zero",
                       max_degree=8, checks=["structure", "theorem"])
    r1 = json.dumps(strip_timing(run(config)), sort_keys=False)
    r2 = json.dumps(strip_timing(run(config)), sort_keys=False)
    assert r1 == r2


def test_unknown_check_rejected():
    config = JobConfig(algebra="sl2", checks=["nope"])
    with pytest.raises(ConfigError):
        run(config)


def test_negative_degree_rejected():
    config = JobConfig(algebra="sl2", nilpotent="regular", max_degree=-1)
    with pytest.raises(ConfigError):
        run(config)


def test_lagrangian_checks_need_lagrangian():
    config = JobConfig(algebra="sl3", nilpotent="minimal", ell="zero",
                       max_degree=4, checks=["whittaker"])
    with pytest.raises(ConfigError):
        run(config)


def test_partition_nilpotent():
    config = JobConfig(algebra="sl4", nilpotent="[2,1,1]", ell="zero",
                       max_degree=2, checks=["structure", "decomposition"])
    report = run(config)
    assert report["status"] == "pass"
    assert report["case"]["dim"] == 15


def test_explicit_vector_nilpotent_and_ell():
    # E13 is index 1 in the sl3 basis order; E21 is index 5
    e = ",".join("1" if i == 1 else "0" for i in range(8))
    ell = ",".join("1" if i == 5 else "0" for i in range(8))
    config = JobConfig(algebra="sl3", nilpotent=e, ell=ell,
                       max_degree=4, checks=["decomposition", "whittaker"])
    report = run(config)
    assert report["status"] == "pass"
    assert report["case"]["lagrangian"] is True


def test_main_exit_codes(tmp_path):
    out = tmp_path / "r.json"
    code = main(["run", "--algebra", "sl2", "--nilpotent", "regular",
                 "--max-degree", "8", "--checks", "theorem",
                 "--out", str(out), "--quiet"])
    assert code == 0
    saved = json.loads(out.read_text())
    assert saved["status"] == "pass"
    assert main(["run", "--algebra", "nope", "--nilpotent", "regular"]) == 2
    assert main(["run", "--algebra", "sl3", "--nilpotent", "minimal",
                 "--ell", "zero", "--checks", "poisson"]) == 2


def test_main_describe(capsys):
    assert main(["describe", "--algebra", "sl3", "--nilpotent", "minimal",
                 "--ell", "lagrangian-auto"]) == 0
    desc = json.loads(capsys.readouterr().out)
    assert desc["slice_degrees"] == [2, 3, 3, 4]
    assert desc["lagrangian"] is True


def test_algebra_file_input(tmp_path):
    doc = {
        "labels": ["e", "h", "f"],
        "brackets": [
            {"i": 0, "j": 1, "value": [[0, "-2"]]},
            {"i": 0, "j": 2, "value": [[1, "1"]]},
            {"i": 1, "j": 2, "value": [[2, "-2"]]},
        ],
        "nilpotent": ["1", "0", "0"],
        "ell": [],
    }
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(doc))
    code = main(["run", "--algebra", str(path), "--ell", "file",
                 "--max-degree", "8", "--checks", "theorem,whittaker",
                 "--quiet"])
    assert code == 0


def test_render_report_mentions_checks():
    config = JobConfig(algebra="sl2", nilpotent="regular", ell="zero",
                       max_degree=4, checks=["structure", "center"])
    text = render_report(run(config))
    assert "structure" in text and "center" in text
    assert "overall: PASS" in text


def test_failing_report_renders_witness():
    report = {
        "config": {"algebra": "sl2", "nilpotent": "regular", "ell": "zero",
                   "max_degree": 4, "checks": ["theorem"]},
        "case": {"dim": 3, "dim_a": 1, "dim_n_ell": 1, "dim_ker_ad_f": 1,
                 "grading_dims": {}, "slice_degrees": [4],
                 "slice_hilbert": [1, 0, 0, 0, 1]},
        "checks": [{"name": "theorem", "status": "fail",
                    "details": {"error": "TheoremFailure"},
                    "witness": {"degree": 4}}],
        "status": "fail",
        "timing": {"total": 0.0},
    }
    text = render_report(report)
    assert "FAIL" in text and "witness" in text


def test_check_registry_is_complete():
    assert set(CHECK_NAMES) == {"structure", "decomposition", "theorem",
                                "poisson", "cohomology", "whittaker", "center",
                                "ell-independence"}


def test_degree_overrides():
    names, overrides = JobConfig.parse_checks("theorem,whittaker:4,center:4")
    assert names == ["theorem", "whittaker", "center"]
    assert overrides == {"whittaker": 4, "center": 4}
    config = JobConfig(algebra="sl3", nilpotent="minimal", ell="lagrangian-auto",
                       max_degree=6, checks=names, degree_overrides=overrides)
    report = run(config)
    assert report["status"] == "pass"
    assert report["config"]["degree_overrides"] == {"center": 4, "whittaker": 4}
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["whittaker"]["details"]["max_degree"] == 4
    assert len(by_name["theorem"]["details"]["gr_dims"]) == 7


def test_degree_override_above_ceiling_rejected():
    config = JobConfig(algebra="sl2", nilpotent="regular", max_degree=4,
                       checks=["theorem"], degree_overrides={"theorem": 8})
    with pytest.raises(ConfigError):
        run(config)
