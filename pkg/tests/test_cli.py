"""Command-line front end: exit codes, file outputs, reruns."""

import csv
import json
import subprocess
import sys

import pytest

from dpsprt.cli import EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_OK, main


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestBounds:
    def test_values_on_stdout(self, capsys):
        rc = main(["bounds", "--p0", "0.3", "--p1", "0.7", "--alpha", "0.05",
                   "--beta", "0.05", "--eps", "1"])
        out = capsys.readouterr().out.splitlines()
        assert rc == EXIT_OK
        header = out[0].split(",")
        row = dict(zip(header, out[1].split(",")))
        assert float(row["lower_h0"]) == pytest.approx(7.819, abs=2e-3)
        assert float(row["upper_h0"]) > float(row["lower_h0"])

    def test_privacy_dominated_value(self, capsys):
        rc = main(["bounds", "--eps", "0.1"])
        out = capsys.readouterr().out.splitlines()
        row = dict(zip(out[0].split(","), out[1].split(",")))
        assert rc == EXIT_OK
        assert float(row["lower_h0"]) == pytest.approx(66.25, abs=2e-3)

    def test_eps_omitted_reduced_report(self, capsys):
        rc = main(["bounds"])
        out = capsys.readouterr().out.splitlines()
        row = dict(zip(out[0].split(","), out[1].split(",")))
        assert rc == EXIT_OK
        assert row["upper_h0"] == "" and row["closed_upper_h0"] == ""
        assert float(row["lower_h0"]) > 0

    def test_alpha_beta_sum_is_config_error(self):
        assert main(["bounds", "--alpha", "0.6", "--beta", "0.6"]) == EXIT_CONFIG

    def test_out_dir_writes_declared_files(self, tmp_path):
        out = tmp_path / "b"
        rc = main(["bounds", "--eps", "1", "--out", str(out)])
        assert rc == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text())
        for name in manifest["outputs"]:
            assert (out / name).exists()


class TestSimulate:
    ARGS = ["simulate", "--trials", "25", "--eps", "1", "--seed", "7",
            "--variants", "classical,laplace", "--truth", "both", "--workers", "1"]

    def test_writes_outputs_and_manifest(self, tmp_path):
        import os

        out = tmp_path / "sim"
        assert main(self.ARGS + ["--out", str(out)]) == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text())
        assert set(manifest["outputs"]) == {"trials.csv", "summary.csv", "manifest.json"}
        # every declared file exists and nothing undeclared was written
        assert set(os.listdir(out)) == set(manifest["outputs"])
        rows = list(csv.reader((out / "summary.csv").open()))
        assert len(rows) == 1 + 2 * 2  # two variants, both truths
        guarantees = manifest["privacy_guarantees"]
        assert guarantees["laplace@eps=1"]["kind"] == "pure_dp"

    def test_rerun_from_manifest_is_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(self.ARGS + ["--out", str(out1)])
        rc = main(["simulate", "--config", str(out1 / "manifest.json"),
                   "--out", str(out2), "--workers", "1"])
        assert rc == EXIT_OK
        assert _read(out1 / "trials.csv") == _read(out2 / "trials.csv")
        assert _read(out1 / "summary.csv") == _read(out2 / "summary.csv")

    def test_zero_trials_is_config_error(self, tmp_path):
        rc = main(["simulate", "--trials", "0", "--out", str(tmp_path / "x")])
        assert rc == EXIT_CONFIG

    def test_bad_config_line_is_anchored(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("p0 = 0.3\nbogus_key = 1\n")
        rc = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "x")])
        assert rc == EXIT_CONFIG
        assert "run.cfg:2" in capsys.readouterr().err

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# paper instance\np0 = 0.3\np1 = 0.7\ntrials = 10\n"
            "eps = 1\nvariants = classical\nseed = 3\n"
        )
        out = tmp_path / "sim"
        rc = main(["simulate", "--config", str(cfg), "--trials", "5", "--out", str(out),
                   "--workers", "1"])
        assert rc == EXIT_OK
        rows = list(csv.reader((out / "trials.csv").open()))
        assert len(rows) == 1 + 5  # flag wins over config

    def test_kappa_below_one_is_flagged(self, tmp_path, capsys):
        out = tmp_path / "k"
        rc = main(self.ARGS + ["--out", str(out), "--kappa", "0.5"])
        assert rc == EXIT_OK
        assert "kappa" in capsys.readouterr().err
        manifest = json.loads((out / "manifest.json").read_text())
        assert "no formal correctness guarantee" in manifest["warning"]

    def test_default_grid_is_five_variants_by_three_eps(self, tmp_path):
        """The paper-defaults configuration yields one summary row per
        (variant, epsilon) cell: 5 x 3."""
        out = tmp_path / "grid"
        rc = main(["simulate", "--trials", "4", "--seed", "7", "--privsprt-pilot", "30",
                   "--out", str(out), "--workers", "1"])
        assert rc == EXIT_OK
        rows = list(csv.DictReader((out / "summary.csv").open()))
        assert len(rows) == 15
        assert {r["variant_id"].split("@")[0] for r in rows} == {
            "classical", "laplace", "gaussian", "laplace_sub", "privsprt"
        }
        assert {r["variant_id"].split("eps=")[1] for r in rows} == {"0.1", "1", "5"}

    def test_gaussian_accounting_labels_pilot_source(self, tmp_path):
        out = tmp_path / "acc"
        rc = main(["simulate", "--trials", "10", "--eps", "5", "--variants", "gaussian",
                   "--seed", "7", "--accounting", "--out", str(out), "--workers", "1"])
        assert rc == EXIT_OK
        note = json.loads((out / "manifest.json").read_text())["privacy_guarantees"]["gaussian@eps=5"]
        assert note["kind"] == "rdp_to_approx_dp"
        assert note["tau_sq_source"].startswith("pilot:100")
        assert 0 < note["delta"] < 1

    def test_gaussian_accounting_asserted_bound(self, tmp_path):
        out = tmp_path / "acc2"
        rc = main(["simulate", "--trials", "10", "--eps", "5", "--variants", "gaussian",
                   "--seed", "7", "--tau-sq-bound", "40000", "--out", str(out),
                   "--workers", "1"])
        assert rc == EXIT_OK
        note = json.loads((out / "manifest.json").read_text())["privacy_guarantees"]["gaussian@eps=5"]
        assert note["tau_sq_source"] == "asserted"

    def test_gaussian_without_bound_is_not_silently_defaulted(self, tmp_path):
        out = tmp_path / "acc3"
        rc = main(["simulate", "--trials", "10", "--eps", "5", "--variants", "gaussian",
                   "--seed", "7", "--out", str(out), "--workers", "1"])
        assert rc == EXIT_OK
        note = json.loads((out / "manifest.json").read_text())["privacy_guarantees"]["gaussian@eps=5"]
        assert note["epsilon"] is None
        assert "unavailable" in note["tau_sq_source"]

    def test_env_seed_fallback(self, tmp_path, monkeypatch):
        out1, out2 = tmp_path / "e1", tmp_path / "e2"
        monkeypatch.setenv("DPSPRT_SEED", "7")
        args = ["simulate", "--trials", "10", "--eps", "1", "--variants", "classical",
                "--workers", "1"]
        assert main(args + ["--out", str(out1)]) == EXIT_OK
        monkeypatch.delenv("DPSPRT_SEED")
        assert main(args + ["--out", str(out2), "--seed", "7"]) == EXIT_OK
        assert _read(out1 / "trials.csv") == _read(out2 / "trials.csv")


class TestCompare:
    def test_head_to_head_with_privsprt(self, tmp_path):
        out = tmp_path / "cmp"
        rc = main(["compare", "--trials", "30", "--eps", "1", "--seed", "7",
                   "--privsprt-pilot", "60", "--out", str(out), "--workers", "1", "--svg"])
        assert rc == EXIT_OK
        rows = list(csv.DictReader((out / "comparison.csv").open()))
        families = {r["variant_id"] for r in rows}
        assert families == {"classical", "laplace", "gaussian", "laplace_sub", "privsprt"}
        for r in rows:
            assert float(r["mean_tau"]) > 0
        assert (out / "comparison.svg").read_text().startswith("<svg")

    def test_rerun_from_compare_manifest(self, tmp_path):
        args = ["compare", "--trials", "20", "--eps", "1", "--seed", "3",
                "--privsprt-pilot", "30", "--workers", "1"]
        out1, out2 = tmp_path / "c1", tmp_path / "c2"
        assert main(args + ["--out", str(out1)]) == EXIT_OK
        rc = main(["compare", "--config", str(out1 / "manifest.json"),
                   "--out", str(out2), "--workers", "1"])
        assert rc == EXIT_OK
        for name in ("comparison.csv", "trials.csv", "summary.csv"):
            assert _read(out1 / name) == _read(out2 / name)

    def test_calibration_failure_exit_code(self, tmp_path, capsys):
        # a horizon too short for any pilot path to decide
        rc = main(["compare", "--trials", "10", "--eps", "1", "--seed", "7",
                   "--horizon", "5", "--privsprt-pilot", "20",
                   "--out", str(tmp_path / "x"), "--workers", "1"])
        assert rc == EXIT_INFEASIBLE
        assert "calibration failed" in capsys.readouterr().err
        assert not (tmp_path / "x").exists()  # no partial results


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dpsprt.cli", "bounds", "--eps", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_OK
    assert "lower_h0" in proc.stdout


class TestTuneKappa:
    def test_grid_of_one_returns_one(self, capsys):
        rc = main(["tune-kappa", "--eps", "1", "--alpha", "0.2", "--beta", "0.2",
                   "--kappa-grid", "1.0", "--pilot-trials", "50",
                   "--confirm-trials", "50", "--seed", "5", "--workers", "1"])
        assert rc == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["selected_kappa"] == 1.0
        assert "kappa = 1" in doc["warning"]

    def test_bad_grid_is_config_error(self):
        rc = main(["tune-kappa", "--kappa-grid", "0.0,0.5", "--workers", "1"])
        assert rc == EXIT_CONFIG

    def test_rerun_from_tune_manifest(self, tmp_path, capsys):
        base = ["tune-kappa", "--eps", "1", "--alpha", "0.2", "--beta", "0.2",
                "--seed", "5", "--workers", "1"]
        out1 = tmp_path / "t1"
        rc = main(base + ["--kappa-grid", "0.6,1.0", "--pilot-trials", "40",
                          "--confirm-trials", "40", "--out", str(out1)])
        assert rc == EXIT_OK
        capsys.readouterr()
        rc = main(["tune-kappa", "--config", str(out1 / "manifest.json"),
                   "--out", str(tmp_path / "t2"), "--workers", "1"])
        assert rc == EXIT_OK
        capsys.readouterr()
        assert _read(out1 / "tune_kappa.json") == _read(tmp_path / "t2" / "tune_kappa.json")
