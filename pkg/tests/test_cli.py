import json

import pytest

from dcakit import parse_report
from dcakit.cli import cli_main


@pytest.fixture
def two_model_csv(tmp_path, d0, d0_degraded):
    path = tmp_path / "two.csv"
    lines = ["y,m1,m2"]
    for y, r1, r2 in zip(d0.outcomes, d0.risks, d0_degraded.risks):
        lines.append(f"{y},{r1},{r2}")
    path.write_text("\n".join(lines) + "\n")
    return path


class TestCurvesCommand:
    def test_single_threshold_report(self, d0_csv_path, capsys):
        code = cli_main([
            "curves", "--input", str(d0_csv_path), "--outcome", "y",
            "--models", "m1", "--grid", "0.5:0.5:0.01",
        ])
        assert code == 0
        doc = parse_report(capsys.readouterr().out.encode())
        (model,) = doc.models
        (point,) = model.points
        assert point.nb_model == pytest.approx(0.1, abs=1e-12)
        assert point.ppv == pytest.approx(0.6, abs=1e-12)
        assert doc.metadata["input_digest"]

    def test_out_file_and_digest_tracking(self, d0_csv_path, tmp_path):
        out = tmp_path / "report.json"
        args = ["curves", "--input", str(d0_csv_path), "--outcome", "y",
                "--models", "m1", "--grid", "0.1:0.2:0.1", "--out", str(out)]
        assert cli_main(args) == 0
        first = json.loads(out.read_text())
        assert cli_main(args) == 0
        assert json.loads(out.read_text()) == first

        copy = tmp_path / "copy.csv"
        copy.write_text(d0_csv_path.read_text().replace("0.9", "0.91"))
        args_copy = ["curves", "--input", str(copy), "--outcome", "y",
                     "--models", "m1", "--grid", "0.1:0.2:0.1", "--out", str(out)]
        assert cli_main(args_copy) == 0
        assert json.loads(out.read_text())["metadata"]["input_digest"] != (
            first["metadata"]["input_digest"]
        )

    def test_csv_format_row_count(self, d0_csv_path, capsys):
        code = cli_main([
            "curves", "--input", str(d0_csv_path), "--outcome", "y",
            "--models", "m1", "--grid", "0.1:0.5:0.1", "--format", "csv",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert len(out.strip().splitlines()) == 1 + 5  # header + one row per t

    def test_svg_outputs(self, d0_csv_path, tmp_path, capsys):
        prefix = tmp_path / "charts"
        code = cli_main([
            "curves", "--input", str(d0_csv_path), "--outcome", "y", "--models", "m1",
            "--grid", "0.1:0.5:0.1", "--out", str(tmp_path / "r.json"),
            "--svg", str(prefix),
        ])
        assert code == 0
        for panel in ("decision", "ppv", "calibration"):
            text = (tmp_path / f"charts-{panel}.svg").read_text()
            assert text.startswith("<svg ")


class TestCompareCommand:
    def test_pairwise_verdicts(self, two_model_csv, capsys):
        code = cli_main([
            "compare", "--input", str(two_model_csv), "--outcome", "y",
            "--models", "m1", "m2", "--grid", "0.5:0.5:0.01",
        ])
        assert code == 0
        doc = parse_report(capsys.readouterr().out.encode())
        (section,) = doc.comparisons
        assert (section.model1, section.model2) == ("m1", "m2")
        (verdict,) = section.verdicts
        assert verdict.winner == "model1"
        assert verdict.nb2 == pytest.approx(-0.1, abs=1e-12)

    def test_requires_exactly_two_models(self, two_model_csv):
        code = cli_main([
            "compare", "--input", str(two_model_csv), "--outcome", "y",
            "--models", "m1",
        ])
        assert code == 1


class TestBoundsCommand:
    def test_zero_nb_two_point_set(self, capsys):
        code = cli_main(["bounds", "--nb", "0", "--prevalence", "0.4", "--t", "0.3"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["kind"] == "zero_nb_two_point"
        assert (payload["lower"], payload["upper"]) == (0.0, 0.3)

    def test_infeasible_exits_2(self, capsys):
        code = cli_main(["bounds", "--nb", "0.9", "--prevalence", "0.4", "--t", "0.3"])
        assert code == 2
        assert "data error" in capsys.readouterr().err

    def test_csv_format(self, capsys):
        code = cli_main(["bounds", "--nb", "0.1", "--prevalence", "0.4", "--t", "0.5",
                         "--format", "csv"])
        assert code == 0
        header, row = capsys.readouterr().out.strip().splitlines()
        assert header.startswith("t,nb,prevalence")
        assert row.split(",")[5] == "positive_nb"


class TestBootstrapCommand:
    def test_bands_present_and_deterministic(self, d0_csv_path, capsys):
        args = ["bootstrap", "--input", str(d0_csv_path), "--outcome", "y",
                "--models", "m1", "--grid", "0.2:0.5:0.1",
                "--replicates", "200", "--seed", "42", "--level", "0.95"]
        assert cli_main(args) == 0
        first = capsys.readouterr().out
        assert cli_main(args) == 0
        second = capsys.readouterr().out
        assert first == second  # byte identical
        doc = parse_report(first.encode())
        band = doc.bands["m1"]
        assert band.spec.replicates == 200
        assert len(band.nb_lower) == 4

    def test_invalid_level_exits_2(self, d0_csv_path):
        code = cli_main(["bootstrap", "--input", str(d0_csv_path), "--outcome", "y",
                         "--models", "m1", "--level", "1.5", "--replicates", "10"])
        assert code == 2


class TestDemoCommand:
    def test_overestimation_flags_high_threshold_region(self, capsys):
        code = cli_main(["demo-miscalibration", "--shift", "1.0", "--n", "20000",
                         "--seed", "7"])
        assert code == 0
        out = capsys.readouterr().out
        assert "worse than treat-none" in out
        assert "region:" in out
        # the flagged region sits above the observed prevalence
        prevalence = float(out.split("observed prevalence:")[1].split()[0])
        region_line = next(l for l in out.splitlines() if "region:" in l)
        lo = float(region_line.split("region:")[1].split()[0])
        assert lo > prevalence

    def test_underestimation_flags_low_threshold_region(self, capsys):
        code = cli_main(["demo-miscalibration", "--shift", "-1.0", "--n", "20000",
                         "--seed", "7"])
        assert code == 0
        out = capsys.readouterr().out
        assert "worse than treat-all" in out
        assert "spared group is not actually low risk" in out


class TestExitCodes:
    def test_unknown_subcommand_is_usage_error(self):
        assert cli_main(["frobnicate"]) == 1

    def test_missing_required_flag_is_usage_error(self):
        assert cli_main(["curves", "--outcome", "y", "--models", "m1"]) == 1

    def test_bad_grid_is_usage_error(self, d0_csv_path):
        assert cli_main(["curves", "--input", str(d0_csv_path), "--outcome", "y",
                         "--models", "m1", "--grid", "nope"]) == 1

    def test_missing_file_is_data_error(self, tmp_path, capsys):
        code = cli_main(["curves", "--input", str(tmp_path / "ghost.csv"),
                         "--outcome", "y", "--models", "m1"])
        assert code == 2

    def test_bad_risk_cites_row(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("y,m1\n1,0.8\n0,0.3\n1,1.2\n")
        code = cli_main(["curves", "--input", str(path), "--outcome", "y",
                         "--models", "m1"])
        assert code == 2
        err = capsys.readouterr().err
        assert "row 3" in err and "m1" in err

    def test_help_exits_zero(self, capsys):
        assert cli_main(["--help"]) == 0
        assert "curves" in capsys.readouterr().out

    def test_version_exits_zero(self, capsys):
        assert cli_main(["--version"]) == 0

    def test_internal_invariant_violation_exits_3(self, d0_csv_path, capsys, monkeypatch):
        from dcakit import RouteDisagreementError
        from dcakit import cli as cli_module

        def explode(*args, **kwargs):
            raise RouteDisagreementError("synthetic failure for the exit-code contract")

        monkeypatch.setattr(cli_module, "decision_curve", explode)
        code = cli_main(["curves", "--input", str(d0_csv_path), "--outcome", "y",
                         "--models", "m1"])
        assert code == 3
        assert "internal invariant violation" in capsys.readouterr().err
