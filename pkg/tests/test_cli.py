"""Tests for the command-line entry point."""

import json

import pytest

from sufficiency_ccapm import __version__
from sufficiency_ccapm.cli import main
from sufficiency_ccapm.core.config import reset_config
from sufficiency_ccapm.models.calibration import CalibrationSystem

PRINTED = CalibrationSystem.printed_constants().as_dict()


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


class TestCalibrate:
    def test_bundled_fixture_meets_acceptance(self, capsys):
        report = run_json(capsys, "calibrate")
        diagnostics = report["diagnostics"]

        for key, value in PRINTED.items():
            assert diagnostics["system"][key] == pytest.approx(value, abs=5e-6)

        reference = diagnostics["reference_point"]
        assert reference["max_residual"] < 1e-5
        assert reference["verified"]

        assert diagnostics["rank"] == 2
        assert diagnostics["smallest_singular_ratio"] < 1e-8
        r3 = [row["r3"] for row in diagnostics["manifold"]]
        assert max(r3) - min(r3) < 1e-12

        assert report["outputs"]["baseline_puzzle_rho"] == pytest.approx(47.60, abs=0.2)
        assert report["outputs"]["sse"] <= 1e-20
        assert diagnostics["observed_premium"] == pytest.approx(0.0618)

    def test_printed_constants_mode(self, capsys):
        report = run_json(capsys, "calibrate", "--paper-constants")
        assert report["inputs"]["mode"] == "printed_constants"
        assert report["diagnostics"]["consistency_defect"] == 0.0
        assert report["diagnostics"]["reference_point"]["max_residual"] < 5e-6
        assert report["outputs"]["baseline_puzzle_rho"] == pytest.approx(47.6032)

    def test_manifold_samples(self, capsys):
        report = run_json(capsys, "calibrate", "--samples", "4", "--rho-max", "3")
        assert [row["rho"] for row in report["diagnostics"]["manifold"]] == [0.0, 1.0, 2.0, 3.0]

    def test_guess_is_echoed(self, capsys):
        report = run_json(capsys, "calibrate", "--guess", "0.9", "1.1", "5")
        assert report["inputs"]["initial_guess"] == [0.9, 1.1, 5.0]

    def test_text_output(self, capsys):
        assert main(["calibrate"]) == 0
        out = capsys.readouterr().out
        assert out.startswith(f"sufficiency-ccapm {__version__} :: calibrate")
        assert "Diagnostics: manifold:" in out
        assert "baseline_puzzle_rho" in out

    def test_stats_file_argument(self, tmp_path, capsys):
        path = tmp_path / "economy.json"
        path.write_text(json.dumps({
            "mean_equity_return": 1.0698,
            "mean_risk_free_rate": 1.008,
            "mean_consumption_growth": 1.018,
            "sd_consumption_growth": 0.036,
        }))
        report = run_json(capsys, "calibrate", str(path), "--beta", "0.98")
        assert report["inputs"]["statistics"]["beta"] == 0.98

    def test_malformed_fixture(self, tmp_path, capsys):
        path = tmp_path / "broken.stats"
        path.write_text(
            "mean_equity_return = 1.0698\n"
            "mean_risk_free_rate = oops\n"
            "mean_consumption_growth = 1.018\n"
            "sd_consumption_growth = 0.036\n"
        )
        assert main(["calibrate", str(path)]) == 1
        err = capsys.readouterr().err
        assert "mean_risk_free_rate" in err
        assert "line 2" in err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["calibrate", str(tmp_path / "nope.stats")]) == 1
        assert "cannot read" in capsys.readouterr().err

    def test_non_convergence(self, monkeypatch, capsys):
        monkeypatch.setenv("CCAPM_SOLVER_MAX_ITER", "1")
        reset_config()
        assert main(["calibrate", "--paper-constants", "--guess", "5", "0.2", "40"]) == 2
        err = capsys.readouterr().err
        assert "last iterate (zeta, xi, rho)" in err

    @pytest.mark.parametrize("samples", ["0", "-3"])
    def test_invalid_samples(self, samples, capsys):
        assert main(["calibrate", "--samples", samples]) == 1
        assert "samples" in capsys.readouterr().err

    def test_printed_constants_reject_other_beta(self, capsys):
        assert main(["calibrate", "--paper-constants", "--beta", "0.95"]) == 1
        assert "beta = 0.99" in capsys.readouterr().err

    def test_printed_constants_accept_their_beta(self, capsys):
        report = run_json(capsys, "calibrate", "--paper-constants", "--beta", "0.99")
        assert report["inputs"]["beta"] == 0.99


class TestPrice:
    def test_reported_point(self, capsys):
        report = run_json(
            capsys, "price", "--rho", "1.033526", "--zeta", "0.961745", "--xi", "1.019392",
            "--mu", "0.017215", "--sigma2", "0.00125",
        )
        assert report["outputs"]["expected_equity_return"] == pytest.approx(1.0698, abs=1e-3)
        assert report["outputs"]["risk_free_rate"] == pytest.approx(1.008, abs=1e-3)
        assert report["diagnostics"]["equilibrium_dividends"] is True

    def test_defaults_to_table1_moments(self, capsys):
        report = run_json(capsys, "price", "--rho", "2")
        assert report["inputs"]["mu_x"] == pytest.approx(0.017215, abs=1e-5)
        assert report["inputs"]["beta"] == 0.99

    def test_boundary_economy(self, capsys):
        report = run_json(capsys, "price", "--rho", "0", "--beta", "1", "--mu", "0", "--sigma2", "0")
        assert report["outputs"]["price_dividend_ratio"] == float("inf")
        assert report["outputs"]["expected_equity_return"] == 1.0
        assert report["outputs"]["risk_free_rate"] == 1.0

    def test_no_equilibrium(self, capsys):
        code = main(["price", "--rho", "0", "--beta", "1", "--mu", "0.01", "--sigma2", "0"])
        assert code == 2
        assert "no equilibrium price" in capsys.readouterr().err

    def test_overflow_is_numerical_error(self, capsys):
        assert main(["price", "--rho", "2000"]) == 2
        assert "overflow" in capsys.readouterr().err


class TestPremium:
    def test_exact(self, capsys):
        report = run_json(capsys, "premium", "--rho", "0.5", "--w-s", "100", "--w-ns", "121")
        assert report["outputs"]["premium"] == pytest.approx(-18.5921)
        assert report["outputs"]["method"] == "exact"
        assert report["diagnostics"]["direction"] == "upward"

    def test_first_order(self, capsys):
        report = run_json(
            capsys, "premium", "--rho", "0.5", "--w-s", "100", "--w-ns", "121", "--beta", "1",
            "--eta", str(20.2 / 22.0), "--method", "first_order",
        )
        assert report["outputs"]["premium"] == pytest.approx(-2.0, rel=1e-9)
        assert report["diagnostics"]["first_order_minus_exact"] == pytest.approx(0.01, rel=1e-6)

    def test_eq27_matches_first_order(self, capsys):
        first = run_json(capsys, "premium", "--rho", "3", "--w-s", "10", "--w-ns", "12", "--method", "first_order")
        weighted = run_json(capsys, "premium", "--rho", "3", "--w-s", "10", "--w-ns", "12", "--method", "eq27")
        assert weighted["outputs"]["premium"] == pytest.approx(first["outputs"]["premium"], rel=1e-12)
        assert weighted["outputs"]["method"] == "paper_eq27"
        assert weighted["inputs"]["method"] == "paper_eq27"

    def test_unknown_method_is_input_error(self, capsys):
        assert main(["premium", "--rho", "2", "--w-s", "1", "--w-ns", "2", "--method", "eq99"]) == 1
        assert "invalid choice" in capsys.readouterr().err

    def test_delta_premium(self, capsys):
        report = run_json(
            capsys, "premium", "--rho", "0.5", "--w-s", "100", "--w-ns", "121", "--beta", "0.99", "--delta", "2.178",
        )
        assert report["outputs"]["premium"] == pytest.approx(3.940399, abs=1e-6)
        assert report["outputs"]["certainty_equivalent"] == pytest.approx(96.059601, abs=1e-6)
        assert report["inputs"]["delta"] == 2.178

    def test_delta_with_eta_is_input_error(self, capsys):
        code = main(["premium", "--rho", "0.5", "--w-s", "100", "--w-ns", "121", "--eta", "0.9", "--delta", "1"])
        assert code == 1
        assert "either eta or delta" in capsys.readouterr().err

    def test_linear_utility_curvature_is_numerical_error(self, capsys):
        code = main(["premium", "--rho", "0", "--w-s", "1", "--w-ns", "2", "--method", "eq27"])
        assert code == 2


class TestClassify:
    @pytest.mark.parametrize("eta, expected", [("0.9", "RiskAverse"), ("1.0", "RiskLoving")])
    def test_examples(self, capsys, eta, expected):
        report = run_json(capsys, "classify", "--rho", "0.5", "--w-t", "100", "--w-T", "121", "--eta", eta)
        assert report["outputs"]["classification"] == expected

    def test_curve_relation_reported(self, capsys):
        report = run_json(capsys, "classify", "--rho", "2", "--w-t", "100", "--w-T", "90", "--eta", "1.1")
        assert report["diagnostics"]["curve_relation"] == "Below"
        assert report["diagnostics"]["direction"] == "downward"

    def test_logarithmic_has_no_curve_relation(self, capsys):
        report = run_json(capsys, "classify", "--rho", "1", "--w-t", "100", "--w-T", "121")
        assert "curve_relation" not in report["diagnostics"]

    def test_non_positive_wealth(self, capsys):
        assert main(["classify", "--rho", "2", "--w-t", "0", "--w-T", "1"]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestSimulate:
    def test_seed_and_generator_in_report(self, capsys):
        report = run_json(capsys, "simulate", "--rho", "2", "--periods", "20000", "--seed", "11")
        assert report["seed"] == 11
        assert report["inputs"]["num_periods"] == 20000
        assert "PCG64" in report["diagnostics"]["generator"]

    def test_repeatable(self, capsys):
        argv = ["simulate", "--rho", "2", "--periods", "5000", "--seed", "3"]
        assert run_json(capsys, *argv) == run_json(capsys, *argv)

    def test_invalid_periods(self, capsys):
        assert main(["simulate", "--rho", "2", "--periods", "0"]) == 1


class TestEntryPoint:
    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    def test_missing_subcommand(self, capsys):
        assert main([]) == 1

    def test_missing_required_flag(self, capsys):
        assert main(["price"]) == 1

    def test_invalid_configuration(self, monkeypatch, capsys):
        monkeypatch.setenv("CCAPM_BETA", "1.5")
        reset_config()
        assert main(["price", "--rho", "2"]) == 1
        assert "CCAPM_BETA" in capsys.readouterr().err


class TestMissingField:
    def test_field_named(self, tmp_path, capsys):
        path = tmp_path / "short.stats"
        path.write_text("mean_equity_return = 1.0698\nmean_risk_free_rate = 1.008\nmean_consumption_growth = 1.018\n")
        assert main(["calibrate", str(path)]) == 1
        assert "sd_consumption_growth" in capsys.readouterr().err
