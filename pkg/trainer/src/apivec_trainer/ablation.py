"""Ablation harness: train every grid configuration with shared folds/seed."""

from __future__ import annotations

import json
import time
from pathlib import Path

from .config import AblationConfig, InvalidConfig
from .train import DEFAULT_BATCH_SIZE, DEFAULT_FOLDS, TrainReport, train, write_report


def run_ablation(
    dataset_dir: str | Path,
    grid: list[tuple[str, AblationConfig]],
    folds: int = DEFAULT_FOLDS,
    epochs: int = 5,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
    out_dir: str | Path | None = None,
) -> list[tuple[str, TrainReport]]:
    """Train each config on identical folds; returns reports in grid order.

    When ``out_dir`` is given, writes one report directory per configuration
    plus ``comparison.json`` ranked by mean validation AUC.
    """
    if not grid:
        raise InvalidConfig("ablation grid is empty")
    started = time.perf_counter()
    reports: list[tuple[str, TrainReport]] = []
    for name, config in grid:
        report = train(
            dataset_dir, config, folds=folds, epochs=epochs, seed=seed, batch_size=batch_size
        )
        reports.append((name, report))
        if out_dir is not None:
            write_report(report, Path(out_dir) / name)

    if out_dir is not None:
        ranked = sorted(reports, key=lambda item: -item[1].summary["auc_mean"])
        comparison = {
            "wall_time_s": time.perf_counter() - started,
            "folds": folds,
            "epochs": epochs,
            "seed": seed,
            "ranking": [
                {
                    "name": name,
                    "auc_mean": report.summary["auc_mean"],
                    "auc_ci95": report.summary["auc_ci95"],
                    "acc_mean": report.summary["acc_mean"],
                    "recall_at_fpr_mean": report.summary["recall_at_fpr_mean"],
                }
                for name, report in ranked
            ],
        }
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "comparison.json").write_text(
            json.dumps(comparison, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return reports


def format_table(reports: list[tuple[str, TrainReport]]) -> str:
    """Human-readable ranking table."""
    ranked = sorted(reports, key=lambda item: -item[1].summary["auc_mean"])
    width = max(len(name) for name, _ in ranked) + 2
    lines = [f"{'config':<{width}}{'AUC':>9}{'±95%':>8}{'ACC':>9}{'recall@0.1%':>13}"]
    for name, report in ranked:
        s = report.summary
        lines.append(
            f"{name:<{width}}{s['auc_mean']:>9.4f}{s['auc_ci95']:>8.4f}"
            f"{s['acc_mean']:>9.4f}{s['recall_at_fpr_mean']:>13.4f}"
        )
    return "\n".join(lines)
