"""Portable on-disk dataset format: flat binary matrix + JSON manifest.

The data file is little-endian float32, row-major (call, feature), all
samples concatenated in manifest order.  The manifest records the format
version, the hash configuration, the sequence cap and per-sample byte
offsets and labels; labels live only here, never inside the matrix.  Writes
are atomic (temp file + rename) and a reader needs nothing beyond this
module's documented layout.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import layout
from .hashing import HashSpec
from .records import SampleMatrix

FORMAT_VERSION = 1
DATA_FILENAME = "data.f32"
MANIFEST_FILENAME = "manifest.json"

_ROW_BYTES = layout.TOTAL_WIDTH * 4


class DatasetError(Exception):
    pass


class IoFailure(DatasetError):
    pass


class DuplicateSampleId(DatasetError):
    pass


class VersionMismatch(DatasetError):
    pass


class CorruptManifest(DatasetError):
    pass


class TruncatedData(DatasetError):
    pass


@dataclass(frozen=True, slots=True)
class ManifestEntry:
    sample_id: str
    row_count: int
    label: int | None
    offset: int  # byte offset into the data file


@dataclass(slots=True)
class DatasetManifest:
    format_version: int
    hash_spec: HashSpec
    max_len: int
    samples: list[ManifestEntry]

    def to_json(self) -> str:
        doc = {
            "format_version": self.format_version,
            "hash_spec": self.hash_spec.to_dict(),
            "max_len": self.max_len,
            "samples": [
                {
                    "sample_id": entry.sample_id,
                    "row_count": entry.row_count,
                    "label": entry.label,
                    "offset": entry.offset,
                }
                for entry in self.samples
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_dataset(
    samples: Iterable[SampleMatrix],
    out_dir: str | Path,
    max_len: int | None = None,
) -> DatasetManifest:
    """Stream samples to ``out_dir``; returns the manifest that was written.

    ``max_len`` is taken from the samples themselves and must agree across
    them; pass it explicitly to give an empty dataset a defined cap.
    """
    out = Path(out_dir)
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    offset = 0
    data_tmp = out / (DATA_FILENAME + ".tmp")
    try:
        out.mkdir(parents=True, exist_ok=True)
        with open(data_tmp, "wb") as data_file:
            for sample in samples:
                if sample.sample_id in seen:
                    raise DuplicateSampleId(sample.sample_id)
                seen.add(sample.sample_id)
                if max_len is None:
                    max_len = sample.max_len
                elif sample.max_len != max_len:
                    raise ValueError(
                        f"mixed max_len in one dataset: {sample.max_len} != {max_len}"
                    )
                rows = np.ascontiguousarray(sample.rows, dtype="<f4")
                if rows.ndim != 2 or rows.shape[1] != layout.TOTAL_WIDTH:
                    raise ValueError(f"bad row shape {rows.shape} for {sample.sample_id}")
                data_file.write(rows.tobytes())
                entries.append(
                    ManifestEntry(sample.sample_id, rows.shape[0], sample.label, offset)
                )
                offset += rows.shape[0] * _ROW_BYTES
        manifest = DatasetManifest(
            format_version=FORMAT_VERSION,
            hash_spec=HashSpec(),
            max_len=max_len if max_len is not None else 0,
            samples=entries,
        )
        manifest_tmp = out / (MANIFEST_FILENAME + ".tmp")
        manifest_tmp.write_text(manifest.to_json(), encoding="utf-8")
        os.replace(data_tmp, out / DATA_FILENAME)
        os.replace(manifest_tmp, out / MANIFEST_FILENAME)
    except OSError as exc:
        data_tmp.unlink(missing_ok=True)
        raise IoFailure(f"cannot write dataset to {out}: {exc}") from exc
    return manifest


def _entry_from_json(raw: object) -> ManifestEntry:
    if not isinstance(raw, dict):
        raise CorruptManifest("sample entry is not an object")
    try:
        sample_id = raw["sample_id"]
        row_count = raw["row_count"]
        label = raw["label"]
        offset = raw["offset"]
    except KeyError as exc:
        raise CorruptManifest(f"sample entry missing {exc}") from exc
    if (
        not isinstance(sample_id, str)
        or not isinstance(row_count, int)
        or not isinstance(offset, int)
        or not (label is None or label in (0, 1))
    ):
        raise CorruptManifest(f"bad sample entry for {sample_id!r}")
    return ManifestEntry(sample_id, row_count, label, offset)


def read_manifest(dataset_dir: str | Path) -> DatasetManifest:
    """Load and validate the manifest of a dataset directory."""
    path = Path(dataset_dir) / MANIFEST_FILENAME
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise CorruptManifest(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise CorruptManifest("manifest is not an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"dataset format {version!r}, reader supports {FORMAT_VERSION}")
    try:
        hash_spec = HashSpec.from_dict(doc["hash_spec"])
        max_len = doc["max_len"]
        raw_samples = doc["samples"]
    except (KeyError, TypeError) as exc:
        raise CorruptManifest(f"manifest missing field: {exc}") from exc
    if not isinstance(max_len, int) or not isinstance(raw_samples, list):
        raise CorruptManifest("manifest fields have wrong types")

    entries = [_entry_from_json(raw) for raw in raw_samples]
    expected_offset = 0
    for entry in entries:
        if entry.offset != expected_offset:
            raise CorruptManifest(
                f"offset of {entry.sample_id!r} is {entry.offset}, expected {expected_offset}"
            )
        if entry.row_count < 1 or entry.row_count > max_len:
            raise CorruptManifest(
                f"row count {entry.row_count} of {entry.sample_id!r} outside [1, {max_len}]"
            )
        expected_offset += entry.row_count * _ROW_BYTES
    return DatasetManifest(FORMAT_VERSION, hash_spec, max_len, entries)


def read_dataset(dataset_dir: str | Path) -> Iterator[SampleMatrix]:
    """Yield samples in manifest order, validating sizes against the data file."""
    directory = Path(dataset_dir)
    manifest = read_manifest(directory)
    data_path = directory / DATA_FILENAME
    try:
        size = data_path.stat().st_size
    except OSError as exc:
        raise IoFailure(f"cannot stat {data_path}: {exc}") from exc
    total = sum(entry.row_count * _ROW_BYTES for entry in manifest.samples)
    if size != total:
        raise TruncatedData(f"data file is {size} bytes, manifest expects {total}")

    try:
        with open(data_path, "rb") as data_file:
            for entry in manifest.samples:
                raw = data_file.read(entry.row_count * _ROW_BYTES)
                if len(raw) != entry.row_count * _ROW_BYTES:
                    raise TruncatedData(f"short read for {entry.sample_id!r}")
                rows = np.frombuffer(raw, dtype="<f4").reshape(
                    entry.row_count, layout.TOTAL_WIDTH
                )
                yield SampleMatrix(
                    sample_id=entry.sample_id,
                    rows=rows,
                    label=entry.label,
                    max_len=manifest.max_len,
                )
    except OSError as exc:
        raise IoFailure(f"cannot read {data_path}: {exc}") from exc


def export_csv(sample: SampleMatrix, out_path: str | Path) -> None:
    """Debug/interop export: header + one row per call, 9 significant digits."""
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as csv_file:
            csv_file.write(",".join(layout.csv_header()) + "\n")
            for row in sample.rows:
                csv_file.write(",".join(f"{value:.9g}" for value in row) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {out_path}: {exc}") from exc


def import_csv(csv_path: str | Path) -> np.ndarray:
    """Read a CSV produced by :func:`export_csv` back into a float32 matrix."""
    try:
        with open(csv_path, "r", encoding="utf-8") as csv_file:
            header = csv_file.readline().rstrip("\n").split(",")
            if header != layout.csv_header():
                raise CorruptManifest(f"unexpected CSV header in {csv_path}")
            rows = [
                [float(cell) for cell in line.rstrip("\n").split(",")]
                for line in csv_file
                if line.strip()
            ]
    except OSError as exc:
        raise IoFailure(f"cannot read {csv_path}: {exc}") from exc
    matrix = np.asarray(rows, dtype=np.float32)
    return matrix.reshape(-1, layout.TOTAL_WIDTH)
