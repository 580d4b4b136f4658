"""Tests for the command-line surface and its exit codes"""

import pytest

from config import FRANELConfig
from src.reports.csv_writer import read_csv


def test_profile_order_three(run_cli):
    assert run_cli("profile", "--m", "3") == FRANELConfig.EXIT_SUCCESS
    comments, rows = read_csv(run_cli.output_dir / "profile_m3_interior.csv")
    assert [(int(r["k"]), int(r["term_count"])) for r in rows] == [(2, 1), (3, 2)]
    assert float(rows[0]["p_value"]) == pytest.approx(0.027778, abs=1e-6)
    assert float(rows[1]["p_value"]) == pytest.approx(0.111111, abs=1e-6)
    assert "m=3" in comments


def test_profile_terms_and_plots(run_cli):
    assert run_cli("profile", "--m", "50", "--terms", plots=True) == 0
    _, rows = read_csv(run_cli.output_dir / "terms_m50_interior.csv")
    _, profile_rows = read_csv(run_cli.output_dir / "profile_m50_interior.csv")
    assert len(rows) == sum(int(r["term_count"]) for r in profile_rows)
    assert (run_cli.output_dir / "terms_m50_interior.gp").is_file()
    assert (run_cli.output_dir / "profile_m50_interior.gp").is_file()


def test_profile_range_and_convention(run_cli):
    assert run_cli("--convention", "paper-literal", "profile", "--m-range", "2", "6") == 0
    for m in range(2, 7):
        assert (run_cli.output_dir / f"profile_m{m}_paper-literal.csv").is_file()


def test_profile_is_deterministic(run_cli):
    path = run_cli.output_dir / "profile_m1000_interior.csv"
    assert run_cli("profile", "--m", "1000") == 0
    first = path.read_bytes()
    assert run_cli("profile", "--m", "1000") == 0
    assert path.read_bytes() == first


@pytest.mark.parametrize("args", [
    ("profile", "--m", "1"),
    ("profile", "--m", "5", "--m-range", "2", "4"),
    ("profile",),
    ("ratio", "--from", "10", "--to", "10", "--reference-params"),
    ("ratio",),
    ("ratio", "--reference-params", "--s", "-7"),
    ("verify", "--max-m", "1"),
    ("fit", "--prime-set", "101", "101"),
    ("fit", "--prime-set", "20", "10"),
    ("--threads", "0", "version"),
    ("--convention", "midpoint", "version"),
    ("no-such-command",),
])
def test_usage_errors(run_cli, args):
    assert run_cli(*args) == FRANELConfig.EXIT_USAGE


def test_fit_without_cache_is_a_computation_error(run_cli):
    assert run_cli("fit", "--prime-set", "26", "30", "--no-compute") == FRANELConfig.EXIT_COMPUTATION


def test_fit_small_set(run_cli):
    assert run_cli("fit", "--prime-set", "26", "30", "--residuals", "direct") == 0
    _, table = read_csv(run_cli.output_dir / "table_interior.csv")
    assert [row["set"] for row in table] == ["M(26,30)"]
    _, fits = read_csv(run_cli.output_dir / "fit_26_30_interior.csv")
    assert [int(row["m"]) for row in fits] == [101, 103, 107, 109, 113]
    comments, _ = read_csv(run_cli.output_dir / "residuals_26_30_interior.csv")
    assert "residuals=direct" in comments

    # now every profile is cached
    assert run_cli("fit", "--prime-set", "26", "30", "--no-compute") == 0


def test_options_after_the_command(run_cli, tmp_path):
    assert run_cli("fit", "--prime-set", "26", "30", "--convention", "paper-literal") == 0
    _, table = read_csv(run_cli.output_dir / "table_paper-literal.csv")
    assert [row["set"] for row in table] == ["M(26,30)"]

    elsewhere = tmp_path / "elsewhere"
    assert run_cli("hull", "--m", "50", "--output", str(elsewhere), "--threads", "2") == 0
    assert (elsewhere / "hull_m50_interior.csv").is_file()
    assert not (run_cli.output_dir / "hull_m50_interior.csv").exists()

    assert run_cli("hull", "--m", "50", "--threads", "0") == FRANELConfig.EXIT_USAGE


@pytest.mark.slow
def test_fit_literal_convention_as_documented(run_cli):
    assert run_cli("fit", "--prime-set", "101", "200", "--convention", "paper-literal") == 0
    _, table = read_csv(run_cli.output_dir / "table_paper-literal.csv")
    assert [row["set"] for row in table] == ["M(101,200)"]

def test_ratio_with_reference_params(run_cli):
    assert run_cli("ratio", "--steps", "5", "--reference-params", plots=True) == 0
    comments, rows = read_csv(run_cli.output_dir / "ratio.csv")
    ratios = [float(r["ratio"]) for r in rows]
    assert len(ratios) == 5
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert "epsilon=1e-06" in comments
    assert (run_cli.output_dir / "ratio.gp").is_file()


def test_ratio_params_from_table(run_cli, tmp_path):
    table = tmp_path / "table.csv"
    table.write_text("set,s,t,u,v\nM(101,800),-7.87,0.107,4.73,-1.02\n")
    assert run_cli("ratio", "--steps", "3", "--params-from", str(table), "--row", "M(101,800)") == 0
    assert run_cli("ratio", "--params-from", str(table), "--row", "M(1,2)") == FRANELConfig.EXIT_USAGE


def test_verify(run_cli, tmp_path):
    report = tmp_path / "report.txt"
    assert run_cli("verify", "--max-m", "30", "--output", str(report)) == 0
    assert "PASSED" in report.read_text()


def test_hull_bumps_envelope_bound(run_cli):
    assert run_cli("hull", "--m", "50") == 0
    assert run_cli("bumps", "--m", "50") == 0
    assert run_cli("envelope", "--m", "50", "--reference-params") == 0
    assert run_cli("bound", "--m", "100", "--m", "1000", "--reference-params") == 0

    _, hull = read_csv(run_cli.output_dir / "hull_m50_interior.csv")
    assert int(hull[-1]["k"]) == 47
    _, bumps = read_csv(run_cli.output_dir / "bumps_m50_interior.csv")
    assert all(float(b["distance"]) <= 3 for b in bumps)
    _, envelope = read_csv(run_cli.output_dir / "envelope_m50_interior.csv")
    assert len(envelope) == 49
    _, bound = read_csv(run_cli.output_dir / "bound_interior.csv")
    assert [(int(r["m"]), r["satisfied"]) for r in bound][-1] == (1000, "true")


def test_bound_reports_an_underflowing_envelope(run_cli):
    args = ("bound", "--m", "50", "--s", "-1000", "--t", "0", "--u", "1", "--v", "-1")
    assert run_cli(*args) == 0
    _, rows = read_csv(run_cli.output_dir / "bound_interior.csv")
    assert [(r["m"], float(r["rtilde"]), r["satisfied"]) for r in rows] == [("50", 0.0, "false")]


def test_version(run_cli):
    assert run_cli("version") == 0
