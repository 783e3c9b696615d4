"""Trainer CLI: subcommands, outputs, exit codes."""

from __future__ import annotations

import json

import numpy as np
import pytest

from apivec_trainer.cli import main
from conftest import separable_features, write_dataset_dir

FAST_CONF = "filters = 16\nlstm_units = 12\ndense_units = 8\n"


@pytest.fixture
def dataset(tmp_path):
    rng = np.random.default_rng(8)
    features, labels = separable_features(16, rng)
    return write_dataset_dir(tmp_path / "ds", features, labels)


class TestGenCorpus:
    def test_writes_reports_and_labels(self, tmp_path, capsys):
        out = tmp_path / "corpus"
        code = main(["gen-corpus", "--out", str(out), "--samples", "8",
                     "--malicious-fraction", "0.5", "--seed", "3"])
        assert code == 0
        assert len(list(out.glob("*.json"))) == 8
        assert (out / "labels.csv").exists()

    def test_bad_fraction_is_usage_error(self, tmp_path):
        assert main(["gen-corpus", "--out", str(tmp_path / "x"),
                     "--samples", "8", "--malicious-fraction", "1.5"]) == 1


class TestTrainCommand:
    def test_train_with_config_and_report(self, dataset, tmp_path, capsys):
        conf = tmp_path / "fast.conf"
        conf.write_text(FAST_CONF)
        out = tmp_path / "run"
        code = main([
            "train", "--data", str(dataset), "--config", str(conf),
            "--epochs", "2", "--seed", "1", "--out", str(out),
        ])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "AUC" in stdout and "recall@0.1%FPR" in stdout
        report = json.loads((out / "report.json").read_text())
        assert report["epochs"] == 2
        assert (out / "roc.csv").exists()

    def test_missing_dataset_is_2(self, tmp_path):
        assert main(["train", "--data", str(tmp_path / "nope"), "--epochs", "1"]) == 2

    def test_bad_config_file_is_1(self, dataset, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("kernel_sizes = 7\n")
        assert main(["train", "--data", str(dataset), "--config", str(conf)]) == 1

    def test_usage_error_is_1(self):
        assert main(["train"]) == 1
        assert main(["unknown-command"]) == 1


class TestAblateCommand:
    def test_small_grid(self, dataset, tmp_path, capsys):
        grid = tmp_path / "grid.ini"
        grid.write_text(
            "[tiny-a]\nfilters = 16\nlstm_units = 12\ndense_units = 8\n\n"
            "[tiny-b]\nfilters = 16\nlstm_units = 12\ndense_units = 8\nlstm_layers = 0\n"
        )
        out = tmp_path / "ablation"
        code = main([
            "ablate", "--data", str(dataset), "--grid", str(grid),
            "--epochs", "1", "--seed", "0", "--out", str(out),
        ])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "tiny-a" in stdout and "tiny-b" in stdout
        comparison = json.loads((out / "comparison.json").read_text())
        assert {entry["name"] for entry in comparison["ranking"]} == {"tiny-a", "tiny-b"}
        assert (out / "tiny-a" / "report.json").exists()
        assert (out / "tiny-b" / "roc.csv").exists()

    def test_empty_grid_is_usage_error(self, dataset, tmp_path):
        grid = tmp_path / "empty.ini"
        grid.write_text("# no sections\n")
        assert main(["ablate", "--data", str(dataset), "--grid", str(grid)]) == 1
