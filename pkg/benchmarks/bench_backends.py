#!/usr/bin/env python3
"""Benchmark the compiled hashing kernels against the pure-Python fallback.

Times raw FNV, the two accumulators, and the full per-call vectorization on
the committed fixture corpus, for each backend.

Usage: python benchmarks/bench_backends.py [--min-seconds 0.5]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

import numpy as np

from apivec import hashing
from apivec.ingest import dedup_sequence, parse_report
from apivec.vectorize import vectorize_call

CORPUS = Path(__file__).resolve().parent.parent / "fixtures" / "corpus50"


def _load_calls():
    calls = []
    for path in sorted(CORPUS.glob("*.json")):
        calls.extend(dedup_sequence(parse_report(path.read_bytes(), path.stem)).calls)
    return calls


def _time(fn, min_seconds: float) -> tuple[float, int]:
    """Run fn() repeatedly for at least min_seconds; returns (seconds, rounds)."""
    fn()  # warm-up
    rounds = 0
    started = time.perf_counter()
    while True:
        fn()
        rounds += 1
        elapsed = time.perf_counter() - started
        if elapsed >= min_seconds:
            return elapsed, rounds


def run(min_seconds: float) -> None:
    calls = _load_calls()
    payload = b"C:\\Windows\\System32\\drivers\\etc\\hosts"
    elements = ["Get", "File", "Size", "kernel32.dll", "c:", "c:\\windows"] * 4
    pairs = [("size", 22), ("port", 443), ("flags", -7), ("offset", 2**40)] * 4
    out = np.zeros(102)

    workloads = {
        "fnv1a64 (39-byte path)": lambda: hashing.fnv1a64(payload),
        "accumulate_strings (24 elems, M=16)": lambda: hashing.accumulate_strings(
            elements, 16, out, 28
        ),
        "accumulate_int_pairs (16 pairs, M=16)": lambda: hashing.accumulate_int_pairs(
            pairs, 16, out, 12
        ),
        f"vectorize_call ({len(calls)} fixture calls)": lambda: [
            vectorize_call(c) for c in calls
        ],
    }

    results: dict[str, dict[str, float]] = {name: {} for name in workloads}
    available = ["pure"]
    try:
        hashing.use_backend("cython")
        available.insert(0, "cython")
    except ImportError:
        print("compiled backend not built; timing pure only")

    for backend in available:
        hashing.use_backend(backend)
        # rebuild closures against the switched module-level functions
        for name, fn in workloads.items():
            seconds, rounds = _time(fn, min_seconds)
            results[name][backend] = seconds / rounds

    width = max(len(name) for name in workloads) + 2
    header = f"{'workload':<{width}}" + "".join(f"{b:>14}" for b in available)
    if len(available) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, per_backend in results.items():
        line = f"{name:<{width}}"
        for backend in available:
            line += f"{per_backend[backend] * 1e6:>12.1f}us"
        if len(available) == 2:
            line += f"{per_backend['pure'] / per_backend['cython']:>9.1f}x"
        print(line)

    if "cython" in available:
        hashing.use_backend("cython")
    calls_per_round = len(calls)
    seconds, rounds = _time(lambda: [vectorize_call(c) for c in calls], min_seconds)
    print(f"\nactive backend ({hashing.BACKEND}): "
          f"{calls_per_round * rounds / seconds:,.0f} calls/s end-to-end")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-seconds", type=float, default=0.5)
    run(parser.parse_args().min_seconds)
