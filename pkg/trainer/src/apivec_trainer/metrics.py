"""Binary classification metrics: ROC/AUC, accuracy, recall at a fixed FPR."""

from __future__ import annotations

import numpy as np


class SingleClassData(Exception):
    """ROC metrics are undefined when only one class is present."""


def roc_curve(labels, scores) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """ROC points swept over the distinct scores, plus the (0, 0) start.

    Returns (fpr, tpr, thresholds); thresholds[0] is +inf (predict nothing
    positive) and both rates are nondecreasing along the curve.
    """
    labels = np.asarray(labels)
    scores = np.asarray(scores, dtype=np.float64)
    positives = int(np.sum(labels == 1))
    negatives = int(np.sum(labels == 0))
    if positives == 0 or negatives == 0:
        raise SingleClassData("ROC needs both a positive and a negative sample")

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_labels = labels[order]
    tp_cum = np.cumsum(sorted_labels == 1)
    fp_cum = np.cumsum(sorted_labels == 0)
    # keep only the last index of each tied score block
    distinct = np.nonzero(np.diff(sorted_scores, append=np.nan))[0]

    tpr = np.concatenate([[0.0], tp_cum[distinct] / positives])
    fpr = np.concatenate([[0.0], fp_cum[distinct] / negatives])
    thresholds = np.concatenate([[np.inf], sorted_scores[distinct]])
    return fpr, tpr, thresholds


def auc(fpr, tpr) -> float:
    """Trapezoidal area under the full ROC curve."""
    return float(np.trapezoid(tpr, fpr))


def roc_auc(labels, scores) -> float:
    fpr, tpr, _ = roc_curve(labels, scores)
    return auc(fpr, tpr)


def accuracy(labels, scores, threshold: float = 0.5) -> float:
    labels = np.asarray(labels)
    predicted = np.asarray(scores) >= threshold
    return float(np.mean(predicted == (labels == 1)))


def recall_at_fpr(labels, scores, max_fpr: float = 0.001) -> float:
    """Best detection rate while the false-positive rate stays <= max_fpr."""
    fpr, tpr, _ = roc_curve(labels, scores)
    within = fpr <= max_fpr
    if not np.any(within):
        return 0.0
    return float(np.max(tpr[within]))


def binary_metrics(labels, scores) -> dict[str, float]:
    """AUC, accuracy at 0.5, and recall at 0.1% FPR in one pass."""
    fpr, tpr, _ = roc_curve(labels, scores)
    within = fpr <= 0.001
    return {
        "auc": auc(fpr, tpr),
        "acc": accuracy(labels, scores),
        "recall_at_fpr": float(np.max(tpr[within])) if np.any(within) else 0.0,
    }
