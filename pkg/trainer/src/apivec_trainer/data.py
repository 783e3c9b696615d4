"""Reader for extracted feature datasets.

A dataset directory contains ``data.f32`` (little-endian float32, row-major,
samples concatenated) and ``manifest.json`` with per-sample
``{sample_id, row_count, label, offset}`` byte offsets.  This module knows
nothing about the extractor beyond that layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

FEATURE_WIDTH = 102
SUPPORTED_FORMAT_VERSION = 1

_ROW_BYTES = FEATURE_WIDTH * 4


class DatasetFormatError(Exception):
    """Dataset directory does not match the documented layout."""


class UnlabeledData(Exception):
    """Training requires a label for every sample."""


@dataclass(slots=True)
class Sample:
    sample_id: str
    features: np.ndarray  # (n_calls, 102) float32
    label: int | None


def load_dataset(dataset_dir: str | Path) -> list[Sample]:
    """Load all samples (manifest order) from an extracted dataset."""
    directory = Path(dataset_dir)
    try:
        manifest = json.loads((directory / "manifest.json").read_text(encoding="utf-8"))
    except OSError as exc:
        raise DatasetFormatError(f"cannot read manifest in {directory}: {exc}") from exc
    except ValueError as exc:
        raise DatasetFormatError(f"manifest is not valid JSON: {exc}") from exc

    version = manifest.get("format_version")
    if version != SUPPORTED_FORMAT_VERSION:
        raise DatasetFormatError(
            f"dataset format_version {version!r}, reader supports {SUPPORTED_FORMAT_VERSION}"
        )
    entries = manifest.get("samples")
    if not isinstance(entries, list):
        raise DatasetFormatError("manifest has no samples list")

    data = (directory / "data.f32").read_bytes()
    expected = sum(entry["row_count"] for entry in entries) * _ROW_BYTES
    if len(data) != expected:
        raise DatasetFormatError(f"data.f32 is {len(data)} bytes, manifest expects {expected}")

    samples = []
    for entry in entries:
        offset = entry["offset"]
        row_count = entry["row_count"]
        rows = np.frombuffer(
            data, dtype="<f4", count=row_count * FEATURE_WIDTH, offset=offset
        ).reshape(row_count, FEATURE_WIDTH)
        samples.append(Sample(entry["sample_id"], rows, entry["label"]))
    return samples


def require_labels(samples: list[Sample]) -> np.ndarray:
    """Labels as an int array; raises UnlabeledData if any are missing."""
    missing = [s.sample_id for s in samples if s.label is None]
    if missing:
        raise UnlabeledData(f"{len(missing)} unlabeled samples (first: {missing[0]})")
    return np.array([s.label for s in samples], dtype=np.int64)


def pad_batch(
    samples: list[Sample], max_len: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Zero-pad a batch to its longest sequence; returns (features, lengths).

    ``features`` is (batch, T, 102) float32, ``lengths`` the true sequence
    lengths (padding is a model-side concern masked out of the pooling).
    """
    rows = [s.features[:max_len] if max_len else s.features for s in samples]
    lengths = np.array([r.shape[0] for r in rows], dtype=np.int64)
    width = int(lengths.max())
    batch = np.zeros((len(rows), width, FEATURE_WIDTH), dtype=np.float32)
    for i, r in enumerate(rows):
        batch[i, : r.shape[0]] = r
    return batch, lengths
