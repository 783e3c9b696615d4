#!/usr/bin/env python3
"""Regenerate fixtures/golden_vectors.jsonl.

One JSON object per line:

    {"kind": "strings", "m": 8, "elements": [...], "bins": [...]}
    {"kind": "ints",    "m": 16, "pairs": [["size", 22], ...], "bins": [...]}

``bins`` holds the exact expected float64 output of the hashing kernels for
that input; conformance tests (including any non-Python reader of the
dataset format) must reproduce every value bit-exactly.  The committed file
was produced by the pure-Python kernels and is re-verified against an
independent term-by-term reference on every test run, so regenerating it can
never mask a kernel change: bump the hash format version instead.
"""

from __future__ import annotations

import json
from pathlib import Path

from apivec.hashing import pure

CASES_STRINGS = [
    (1, []),
    (8, ["Get", "File", "Size"]),
    (4, ["n", "e", "t", "w", "o", "r", "k"]),
    (4, ["a", "a"]),
    (16, ["c:", "c:\\a", "c:\\a\\b", "c:\\a\\b\\c"]),
    (16, ["org", "cs.org", "ai.cs.org", "security.ai.cs.org"]),
    (12, ["192", "192.168", "192.168.0", "192.168.0.1"]),
    (8, ["kernel32.dll"]),
    (8, ["", " ", "MZ"]),
    (12, ["hkey_local_machine", "hkey_local_machine\\software"]),
    (8, ["caf\u00e9", "\u4e2d\u6587", "mixed\u00dfcase"]),
]

CASES_INTS = [
    (16, []),
    (16, [["size", 0]]),
    (16, [["port", 22]]),
    (16, [["x", 5], ["x", 5]]),
    (16, [["flags", -1], ["flags", 1]]),
    (16, [["big", 9223372036854775807], ["small", -9223372036854775808]]),
    (4, [["a", 3], ["b", -7], ["c", 123456789]]),
]


def main() -> None:
    out = Path("fixtures/golden_vectors.jsonl")
    lines = []
    for m, elements in CASES_STRINGS:
        bins = [0.0] * m
        pure.accumulate_strings(elements, m, bins)
        lines.append(json.dumps({"kind": "strings", "m": m, "elements": elements, "bins": bins}))
    for m, pairs in CASES_INTS:
        bins = [0.0] * m
        pure.accumulate_int_pairs([(n, v) for n, v in pairs], m, bins)
        lines.append(json.dumps({"kind": "ints", "m": m, "pairs": pairs, "bins": bins}))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} golden vectors to {out}")


if __name__ == "__main__":
    main()
