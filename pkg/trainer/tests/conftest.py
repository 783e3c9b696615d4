from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from apivec_trainer.synth import generate_corpus

REPO_ROOT = Path(__file__).resolve().parent.parent
GRID_FILE = REPO_ROOT / "grids" / "sweeps.ini"


def write_dataset_dir(out_dir: Path, features: list[np.ndarray], labels) -> Path:
    """Write a dataset directory in the documented binary+manifest format.

    Kept independent of the extractor package on purpose: the trainer's view
    of a dataset is only these bytes.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    offset = 0
    entries = []
    blobs = []
    for i, (rows, label) in enumerate(zip(features, labels)):
        rows = np.ascontiguousarray(rows, dtype="<f4")
        blobs.append(rows.tobytes())
        entries.append(
            {
                "sample_id": f"s{i:04d}",
                "row_count": int(rows.shape[0]),
                "label": label,
                "offset": offset,
            }
        )
        offset += len(blobs[-1])
    (out_dir / "data.f32").write_bytes(b"".join(blobs))
    manifest = {
        "format_version": 1,
        "hash_spec": {"algorithm": "fnv1a64", "index_seed": 0,
                      "sign_seed": 0x9E3779B97F4A7C15, "version": 1},
        "max_len": 1000,
        "samples": entries,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest), encoding="utf-8")
    return out_dir


def separable_features(n: int, rng: np.random.Generator, rows_range=(4, 12)):
    """Random per-call features where label-1 samples get a +2 shift up front."""
    features, labels = [], []
    for i in range(n):
        rows = rng.standard_normal((int(rng.integers(*rows_range)), 102)).astype(np.float32)
        label = int(i % 2)
        if label:
            rows[:, 0:8] += 2.0
        features.append(rows)
        labels.append(label)
    return features, labels


def extract_with_cli(reports_dir: Path, dataset_dir: Path, workers: int = 2) -> None:
    """Run the extractor CLI (the only interface the trainer relies on)."""
    subprocess.run(
        [
            sys.executable,
            "-m",
            "apivec.cli",
            "extract",
            "--in",
            str(reports_dir),
            "--out",
            str(dataset_dir),
            "--labels",
            str(reports_dir / "labels.csv"),
            "--workers",
            str(workers),
        ],
        check=True,
        capture_output=True,
    )


@pytest.fixture(scope="session")
def extracted_synth_corpus(tmp_path_factory) -> Path:
    """A 60-sample synthetic corpus run through the real extractor once."""
    base = tmp_path_factory.mktemp("synth60")
    generate_corpus(60, 0.5, seed=2024, out_dir=base / "reports")
    extract_with_cli(base / "reports", base / "dataset")
    return base / "dataset"
