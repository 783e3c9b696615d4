"""Training loop: fold assignment, loss, overfit sanity, report outputs."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest
import torch

from apivec_trainer.config import AblationConfig
from apivec_trainer.data import UnlabeledData, load_dataset
from apivec_trainer.net import build_model
from apivec_trainer.train import (
    SingleClassFold,
    evaluate,
    fit_model,
    make_folds,
    predict,
    train,
    write_report,
)
from conftest import separable_features, write_dataset_dir

FAST = AblationConfig(filters=16, lstm_units=12, dense_units=8)


class TestMakeFolds:
    def test_deterministic(self):
        labels = np.array([0, 1] * 20)
        assert np.array_equal(make_folds(labels, 4, seed=9), make_folds(labels, 4, seed=9))

    def test_seed_changes_assignment(self):
        labels = np.array([0, 1] * 20)
        assert not np.array_equal(make_folds(labels, 4, seed=1), make_folds(labels, 4, seed=2))

    def test_stratified_and_balanced(self):
        rng = np.random.default_rng(0)
        labels = (rng.random(37) < 0.4).astype(int)
        assignment = make_folds(labels, 4, seed=5)
        sizes = [np.sum(assignment == f) for f in range(4)]
        assert max(sizes) - min(sizes) <= 2
        for cls in (0, 1):
            per_fold = [np.sum((assignment == f) & (labels == cls)) for f in range(4)]
            assert max(per_fold) - min(per_fold) <= 1


class TestLoss:
    def test_half_probability_gives_ln2(self):
        loss = torch.nn.functional.binary_cross_entropy(
            torch.tensor(0.5, dtype=torch.float64), torch.tensor(1.0, dtype=torch.float64)
        )
        assert abs(float(loss) - math.log(2.0)) < 1e-9

    def test_matches_analytic_formula(self):
        rng = np.random.default_rng(14)
        for _ in range(20):
            y = float(rng.integers(0, 2))
            p = float(rng.uniform(0.01, 0.99))
            got = torch.nn.functional.binary_cross_entropy(
                torch.tensor(p, dtype=torch.float64), torch.tensor(y, dtype=torch.float64)
            )
            expected = -(y * math.log(p) + (1 - y) * math.log(1 - p))
            assert abs(float(got) - expected) < 1e-9


class TestFitAndPredict:
    def test_overfits_separable_50_samples(self, tmp_path):
        rng = np.random.default_rng(77)
        features, labels = separable_features(50, rng)
        write_dataset_dir(tmp_path / "ds", features, labels)
        samples = load_dataset(tmp_path / "ds")
        torch.manual_seed(0)
        model = build_model(FAST)
        fit_model(model, samples, epochs=50, batch_size=64, seed=0)
        scores = predict(model, samples)
        train_acc = float(np.mean((scores >= 0.5) == np.array(labels, dtype=bool)))
        assert train_acc >= 0.95

    def test_predictions_in_open_unit_interval(self, tmp_path):
        rng = np.random.default_rng(5)
        features, labels = separable_features(8, rng)
        write_dataset_dir(tmp_path / "ds", features, labels)
        samples = load_dataset(tmp_path / "ds")
        torch.manual_seed(0)
        scores = predict(build_model(FAST), samples)
        assert scores.shape == (8,)
        assert np.all(scores > 0) and np.all(scores < 1)


class TestTrain:
    @pytest.fixture
    def dataset(self, tmp_path):
        rng = np.random.default_rng(21)
        features, labels = separable_features(24, rng)
        write_dataset_dir(tmp_path / "ds", features, labels)
        return tmp_path / "ds"

    def test_report_structure_and_curves(self, dataset):
        report = train(dataset, FAST, folds=4, epochs=3, seed=2)
        assert len(report.folds) == 4
        for fold in report.folds:
            assert len(fold.train_loss_curve) == 3
            assert len(fold.val_auc_curve) == 3
            assert set(fold.final) == {"auc", "acc", "recall_at_fpr"}
            assert all(0.0 <= v <= 1.0 for v in fold.final.values())
        for key in ("auc_mean", "auc_ci95", "acc_mean", "recall_at_fpr_mean"):
            assert key in report.summary

    def test_fold_assignment_reproducible_across_runs(self, dataset):
        samples = load_dataset(dataset)
        labels = np.array([s.label for s in samples])
        assert np.array_equal(make_folds(labels, 4, 123), make_folds(labels, 4, 123))

    def test_unlabeled_dataset_rejected(self, tmp_path):
        rng = np.random.default_rng(1)
        features, labels = separable_features(8, rng)
        labels[0] = None
        write_dataset_dir(tmp_path / "ds", features, labels)
        with pytest.raises(UnlabeledData):
            train(tmp_path / "ds", FAST, folds=4, epochs=1)

    def test_single_class_fold_rejected(self, tmp_path):
        rng = np.random.default_rng(2)
        features, _ = separable_features(9, rng)
        labels = [1] + [0] * 8  # one positive cannot stretch over 4 validation folds
        write_dataset_dir(tmp_path / "ds", features, labels)
        with pytest.raises(SingleClassFold):
            train(tmp_path / "ds", FAST, folds=4, epochs=1)

    def test_write_report_files(self, dataset, tmp_path):
        report = train(dataset, FAST, folds=4, epochs=2, seed=2)
        write_report(report, tmp_path / "run")
        doc = json.loads((tmp_path / "run" / "report.json").read_text())
        assert doc["summary"] == report.summary
        assert len(doc["folds"]) == 4
        roc_lines = (tmp_path / "run" / "roc.csv").read_text().strip().splitlines()
        assert roc_lines[0] == "fpr,tpr,threshold"
        assert len(roc_lines) > 2

    def test_evaluate_trained_model(self, dataset):
        samples = load_dataset(dataset)
        torch.manual_seed(0)
        model = build_model(FAST)
        fit_model(model, samples, epochs=15, batch_size=8, seed=4)
        metrics = evaluate(model, dataset)
        assert metrics["auc"] >= 0.9  # separable by construction
