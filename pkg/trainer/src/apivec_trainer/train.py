"""Training: binary cross-entropy + Adam, k-fold cross-validation, reports.

Folds are assigned by a seeded shuffle with per-class round-robin (stratified)
so small corpora never starve a fold of one class by accident; a fold that
still ends up single-class raises rather than silently skewing metrics.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch
from scipy import stats as scipy_stats

from .config import AblationConfig
from .data import Sample, load_dataset, pad_batch, require_labels
from .metrics import binary_metrics, roc_curve
from .net import CallSequenceClassifier, build_model

DEFAULT_BATCH_SIZE = 64
DEFAULT_EPOCHS = 20
DEFAULT_FOLDS = 4


class SingleClassFold(Exception):
    """A fold ended up with only one class; metrics would be undefined."""


@dataclass(slots=True)
class FoldResult:
    fold: int
    train_loss_curve: list[float]
    val_auc_curve: list[float]
    final: dict[str, float]
    val_labels: np.ndarray
    val_scores: np.ndarray


@dataclass(slots=True)
class TrainReport:
    config: dict
    folds: list[FoldResult]
    summary: dict[str, float]
    epochs: int
    seed: int
    wall_time_s: float

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "epochs": self.epochs,
            "seed": self.seed,
            "wall_time_s": self.wall_time_s,
            "summary": self.summary,
            "folds": [
                {
                    "fold": f.fold,
                    "train_loss_curve": f.train_loss_curve,
                    "val_auc_curve": f.val_auc_curve,
                    "final": f.final,
                }
                for f in self.folds
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def make_folds(labels: np.ndarray, folds: int, seed: int) -> np.ndarray:
    """Stratified fold ids per sample; deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    assignment = np.empty(len(labels), dtype=np.int64)
    cursor = 0
    for cls in (0, 1):
        indices = np.flatnonzero(labels == cls)
        rng.shuffle(indices)
        for position, index in enumerate(indices):
            assignment[index] = (cursor + position) % folds
        cursor += len(indices)
    return assignment


def _loss(probabilities: torch.Tensor, targets: torch.Tensor) -> torch.Tensor:
    return torch.nn.functional.binary_cross_entropy(probabilities, targets)


def _batches(count: int, batch_size: int, generator: np.random.Generator | None):
    order = np.arange(count)
    if generator is not None:
        generator.shuffle(order)
    for start in range(0, count, batch_size):
        yield order[start : start + batch_size]


def predict(model: CallSequenceClassifier, samples: list[Sample], batch_size: int = DEFAULT_BATCH_SIZE) -> np.ndarray:
    """Per-sample probabilities in input order (eval mode, no grad)."""
    model.eval()
    scores = []
    with torch.no_grad():
        for batch_idx in _batches(len(samples), batch_size, None):
            batch = [samples[i] for i in batch_idx]
            features, lengths = pad_batch(batch, model.config.max_len)
            probabilities = model(torch.from_numpy(features), torch.from_numpy(lengths))
            scores.append(probabilities.squeeze(1).numpy())
    return np.concatenate(scores)


def fit_model(
    model: CallSequenceClassifier,
    train_samples: list[Sample],
    epochs: int,
    batch_size: int = DEFAULT_BATCH_SIZE,
    seed: int = 0,
    val_samples: list[Sample] | None = None,
) -> tuple[list[float], list[float]]:
    """Train in place; returns (per-epoch mean loss, per-epoch val AUC)."""
    labels = require_labels(train_samples)
    optimizer = torch.optim.Adam(model.parameters(), lr=model.config.lr)
    shuffler = np.random.default_rng(seed)
    loss_curve: list[float] = []
    auc_curve: list[float] = []
    for _ in range(epochs):
        model.train()
        total, count = 0.0, 0
        for batch_idx in _batches(len(train_samples), batch_size, shuffler):
            batch = [train_samples[i] for i in batch_idx]
            features, lengths = pad_batch(batch, model.config.max_len)
            targets = torch.from_numpy(labels[batch_idx].astype(np.float32)).unsqueeze(1)
            optimizer.zero_grad()
            probabilities = model(torch.from_numpy(features), torch.from_numpy(lengths))
            loss = _loss(probabilities, targets)
            loss.backward()
            optimizer.step()
            total += float(loss.detach()) * len(batch)
            count += len(batch)
        loss_curve.append(total / count)
        if val_samples is not None:
            scores = predict(model, val_samples, batch_size)
            auc_curve.append(binary_metrics(require_labels(val_samples), scores)["auc"])
    return loss_curve, auc_curve


def _confidence_interval(values: np.ndarray) -> float:
    """Half-width of the 95% t-interval over fold metrics."""
    if len(values) < 2:
        return 0.0
    t = scipy_stats.t.ppf(0.975, df=len(values) - 1)
    return float(t * values.std(ddof=1) / np.sqrt(len(values)))


def train(
    dataset_dir: str | Path,
    config: AblationConfig | None = None,
    folds: int = DEFAULT_FOLDS,
    epochs: int = DEFAULT_EPOCHS,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> TrainReport:
    """k-fold cross-validated training over an extracted, labeled dataset."""
    config = (config or AblationConfig()).validate()
    samples = load_dataset(dataset_dir)
    labels = require_labels(samples)
    assignment = make_folds(labels, folds, seed)

    started = time.perf_counter()
    results: list[FoldResult] = []
    for fold in range(folds):
        train_idx = np.flatnonzero(assignment != fold)
        val_idx = np.flatnonzero(assignment == fold)
        for name, idx in (("training", train_idx), ("validation", val_idx)):
            if len(np.unique(labels[idx])) < 2:
                raise SingleClassFold(f"fold {fold}: {name} split has a single class")
        torch.manual_seed(seed * 1000 + fold)
        model = build_model(config)
        train_samples = [samples[i] for i in train_idx]
        val_samples = [samples[i] for i in val_idx]
        loss_curve, auc_curve = fit_model(
            model, train_samples, epochs, batch_size, seed=seed * 1000 + fold,
            val_samples=val_samples,
        )
        scores = predict(model, val_samples, batch_size)
        results.append(
            FoldResult(
                fold=fold,
                train_loss_curve=loss_curve,
                val_auc_curve=auc_curve,
                final=binary_metrics(labels[val_idx], scores),
                val_labels=labels[val_idx],
                val_scores=scores,
            )
        )

    summary: dict[str, float] = {}
    for metric in ("auc", "acc", "recall_at_fpr"):
        values = np.array([r.final[metric] for r in results])
        summary[f"{metric}_mean"] = float(values.mean())
        summary[f"{metric}_ci95"] = _confidence_interval(values)
    return TrainReport(
        config=config.to_dict(),
        folds=results,
        summary=summary,
        epochs=epochs,
        seed=seed,
        wall_time_s=time.perf_counter() - started,
    )


def evaluate(
    model: CallSequenceClassifier, dataset_dir: str | Path, batch_size: int = DEFAULT_BATCH_SIZE
) -> dict[str, float]:
    """AUC / accuracy / recall@0.1%FPR of a trained model on a labeled dataset."""
    samples = load_dataset(dataset_dir)
    labels = require_labels(samples)
    return binary_metrics(labels, predict(model, samples, batch_size))


def write_report(report: TrainReport, out_dir: str | Path) -> None:
    """Persist report.json plus pooled out-of-fold ROC points as roc.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json(), encoding="utf-8")
    labels = np.concatenate([f.val_labels for f in report.folds])
    scores = np.concatenate([f.val_scores for f in report.folds])
    fpr, tpr, thresholds = roc_curve(labels, scores)
    lines = ["fpr,tpr,threshold"]
    lines += [f"{f:.9g},{t:.9g},{th:.9g}" for f, t, th in zip(fpr, tpr, thresholds)]
    (out / "roc.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
