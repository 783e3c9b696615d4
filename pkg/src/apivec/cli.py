"""Command-line interface: batch extraction and single-report inspection.

``apivec extract`` walks a directory of sandbox reports, extracts every
parseable one in parallel and writes a dataset; one bad report is counted
and skipped, never fatal.  Output bytes are independent of worker count:
samples are ordered lexicographically by sample id (the report filename
stem), not by scheduling.

Exit codes: 0 success, 1 usage error, 2 fatal I/O.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import layout
from .dataset import IoFailure, write_dataset
from .ingest import EmptyTrace, MalformedReport, dedup_sequence, parse_report
from .records import ApiCallRecord, SampleMatrix
from .strtype import classify
from .vectorize import (
    DEFAULT_MAX_LEN,
    build_sample,
    compute_string_stats,
    expansion_parts,
    split_camel,
    vectorize_call,
)


class NoInputs(Exception):
    """Input directory holds no report files."""


class OutputExists(Exception):
    """Output dataset already present and --force not given."""


class LabelFileError(Exception):
    """Label CSV could not be parsed."""


def _load_labels(label_file: str | Path) -> dict[str, int]:
    labels: dict[str, int] = {}
    try:
        with open(label_file, "r", encoding="utf-8", newline="") as handle:
            for line_no, row in enumerate(csv.reader(handle), start=1):
                if not row or (line_no == 1 and [c.lower() for c in row] == ["sample_id", "label"]):
                    continue
                if len(row) != 2 or row[1] not in ("0", "1"):
                    raise LabelFileError(f"{label_file}:{line_no}: expected 'sample_id,label' with label 0/1")
                labels[row[0]] = int(row[1])
    except OSError as exc:
        raise LabelFileError(f"cannot read {label_file}: {exc}") from exc
    return labels


def _extract_one(task: tuple[str, int]):
    """Worker: one report file -> (sample_id, status, SampleMatrix | None)."""
    path, max_len = task
    sample_id = Path(path).stem
    try:
        data = Path(path).read_bytes()
    except OSError:
        return sample_id, "IoFailure", None
    try:
        seq = parse_report(data, sample_id)
    except MalformedReport:
        return sample_id, "MalformedReport", None
    except EmptyTrace:
        return sample_id, "EmptyTrace", None
    return sample_id, "ok", build_sample(dedup_sequence(seq), max_len=max_len)


def run_extract(
    in_dir: str | Path,
    out_dir: str | Path,
    max_len: int = DEFAULT_MAX_LEN,
    workers: int | None = None,
    label_file: str | Path | None = None,
    force: bool = False,
) -> dict:
    """Extract a directory of reports into a dataset; returns a summary dict."""
    reports = sorted(Path(in_dir).glob("*.json"), key=lambda p: p.stem)
    if not reports:
        raise NoInputs(f"no *.json reports in {in_dir}")
    out = Path(out_dir)
    if not force and (out / "manifest.json").exists():
        raise OutputExists(f"{out} already holds a dataset (use --force to overwrite)")
    labels = _load_labels(label_file) if label_file else {}
    if workers is None:
        workers = os.cpu_count() or 1

    started = time.perf_counter()
    tasks = [(str(path), max_len) for path in reports]
    skipped: dict[str, int] = {}
    rows_total = 0

    def finished_samples(results):
        nonlocal rows_total
        for sample_id, status, sample in results:
            if status != "ok":
                skipped[status] = skipped.get(status, 0) + 1
                continue
            sample.label = labels.get(sample_id)
            rows_total += sample.row_count
            yield sample

    if workers <= 1:
        manifest = write_dataset(finished_samples(map(_extract_one, tasks)), out, max_len=max_len)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunksize = max(1, len(tasks) // (workers * 4))
            manifest = write_dataset(
                finished_samples(pool.map(_extract_one, tasks, chunksize=chunksize)),
                out,
                max_len=max_len,
            )

    wall = time.perf_counter() - started
    return {
        "processed": len(manifest.samples),
        "skipped": sum(skipped.values()),
        "reasons": skipped,
        "rows": rows_total,
        "wall_time_s": wall,
        "calls_per_second": rows_total / wall if wall > 0 else float("inf"),
        "out_dir": str(out),
    }


def _format_value(value) -> str:
    if value is None:
        return "<ignored>"
    if isinstance(value, int):
        return str(value)
    return repr(value)


def _print_call(call: ApiCallRecord, out) -> None:
    print(f"call[{call.call_index}] {call.name} (category={call.category or '-'})", file=out)
    print(f"  name words: {split_camel(call.name)}", file=out)
    text_values = []
    for arg_name, value in call.args:
        line = f"  arg {arg_name} = {_format_value(value)}"
        if isinstance(value, str):
            kind = classify(value)
            line += f"  [{kind.value}]"
            parts = expansion_parts(value, kind)
            if parts:
                line += f" parts={list(parts)}"
            text_values.append(value)
        print(line, file=out)
    stats = compute_string_stats(text_values)
    pairs = ", ".join(f"{k}={v:.6g}" for k, v in zip(layout.STAT_NAMES, stats))
    print(f"  stats: {pairs}", file=out)
    vec = vectorize_call(call)
    for key, _ in layout.SECTIONS:
        section = vec[layout.SLICES[key]]
        print(f"  vec.{key}: [" + ", ".join(f"{v:.6g}" for v in section) + "]", file=out)


def run_inspect(report_path: str | Path, calls: int = 5, out=None) -> None:
    """Dump classifications, expansions and vectors for the first few calls."""
    out = out or sys.stdout
    path = Path(report_path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    try:
        seq = parse_report(data, path.stem)
    except EmptyTrace:
        print(f"report {path.stem}: 0 calls", file=out)
        return
    deduped = dedup_sequence(seq)
    print(
        f"report {deduped.sample_id}: {deduped.raw_count} calls,"
        f" {len(deduped.calls)} after dedup, showing first {min(calls, len(deduped.calls))}",
        file=out,
    )
    for call in deduped.calls[:calls]:
        _print_call(call, out)


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="apivec", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    extract = commands.add_parser("extract", help="extract a directory of reports")
    extract.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    extract.add_argument("--out", dest="out_dir", required=True, metavar="DIR")
    extract.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN, metavar="N")
    extract.add_argument("--workers", type=int, default=None, metavar="K")
    extract.add_argument("--labels", dest="label_file", default=None, metavar="FILE")
    extract.add_argument("--force", action="store_true")

    inspect = commands.add_parser("inspect", help="dump features of one report")
    inspect.add_argument("--report", required=True, metavar="FILE")
    inspect.add_argument("--calls", type=int, default=5, metavar="K")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "extract":
            summary = run_extract(
                args.in_dir,
                args.out_dir,
                max_len=args.max_len,
                workers=args.workers,
                label_file=args.label_file,
                force=args.force,
            )
            print(
                f"processed {summary['processed']} reports"
                f" ({summary['rows']} calls) in {summary['wall_time_s']:.2f}s"
                f" -> {summary['out_dir']}"
            )
            print(f"throughput: {summary['calls_per_second']:.0f} calls/s")
            if summary["skipped"]:
                reasons = ", ".join(f"{k}: {v}" for k, v in sorted(summary["reasons"].items()))
                print(f"skipped {summary['skipped']} ({reasons})")
        elif args.command == "inspect":
            run_inspect(args.report, calls=args.calls)
    except (NoInputs, OutputExists, LabelFileError, IoFailure, MalformedReport) as exc:
        print(f"apivec: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
