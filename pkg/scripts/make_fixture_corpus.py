#!/usr/bin/env python3
"""Regenerate the committed 50-report fixture corpus (fixtures/corpus50).

The corpus is checked in so the test suite never depends on generation code;
rerun this only when the fixture set itself needs to change, then commit the
result.  Generation is fully deterministic for a given seed.

Usage: python scripts/make_fixture_corpus.py [--out fixtures/corpus50]
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

APIS = [
    ("NtCreateFile", "file"),
    ("NtReadFile", "file"),
    ("NtWriteFile", "file"),
    ("GetFileSize", "file"),
    ("DeleteFileW", "file"),
    ("LoadLibraryA", "system"),
    ("GetProcAddress", "system"),
    ("NtAllocateVirtualMemory", "process"),
    ("WriteProcessMemory", "process"),
    ("CreateRemoteThread", "process"),
    ("Process32FirstW", "process"),
    ("RegOpenKeyExA", "registry"),
    ("RegSetValueExA", "registry"),
    ("RegQueryValueExW", "registry"),
    ("InternetOpenUrlA", "network"),
    ("InternetConnectW", "network"),
    ("connect", "network"),
    ("send", "network"),
    ("GetDLLName", "system"),
    ("WSAStartup", "network"),
]

DIRECTORIES = [
    "C:\\Windows\\System32",
    "C:\\Windows\\Temp",
    "C:\\Users\\admin\\AppData\\Local",
    "C:\\Users\\admin\\Documents",
    "C:\\ProgramData\\updates",
    "D:\\work\\builds",
    "\\\\fileserver\\public",
]

FILENAMES = ["report.docx", "setup.exe", "stage2.bin", "notes.txt", "config.ini", "svc.tmp"]
DLLS = ["kernel32.dll", "ntdll.dll", "ws2_32.dll", "advapi32.dll", "urlmon.dll", "shell32.dll"]
REG_KEYS = [
    "HKEY_LOCAL_MACHINE\\Software\\Microsoft\\Windows\\CurrentVersion\\Run",
    "HKEY_CURRENT_USER\\Software\\Classes\\exefile\\shell\\open",
    "HKEY_LOCAL_MACHINE\\System\\CurrentControlSet\\Services\\Tcpip",
    "hkey_current_user\\Environment",
]
HOSTS = [
    "update.vendor-cdn.com",
    "files.example.org",
    "telemetry.win-svc.net",
    "security.ai.cs.org",
    "a.b.c.d.e",
]
PLAIN_STRINGS = [
    "Mozilla/5.0 (Windows NT 6.1; Win64; x64)",
    "open",
    "--silent --install",
    "Global\\MutexName_2041",
    "SeDebugPrivilege",
    "MZP rogram cannot be run in DOS mode",
    "MZ\x90\x00\x03\x00\x04\x00\xff\xff embedded header",
    "caf\u00e9 man\u00e9uvers \u4e2d\u6587",
    "ok",
]


def _text_value(rng: random.Random) -> str:
    roll = rng.random()
    if roll < 0.25:
        return rng.choice(DIRECTORIES) + "\\" + rng.choice(FILENAMES)
    if roll < 0.40:
        if rng.random() < 0.5:
            return rng.choice(DLLS)
        return "C:\\Windows\\System32\\" + rng.choice(DLLS)
    if roll < 0.55:
        return rng.choice(REG_KEYS) + ("" if rng.random() < 0.5 else "\\Value" + str(rng.randint(0, 9)))
    if roll < 0.70:
        scheme = rng.choice(["http", "https"])
        path = rng.choice(["/", "/dl/payload.bin", "/api/v1/beacon?id=" + str(rng.randint(1, 999))])
        return f"{scheme}://{rng.choice(HOSTS)}{path}"
    if roll < 0.80:
        return ".".join(str(rng.randint(0, 255)) for _ in range(4))
    return rng.choice(PLAIN_STRINGS)


def _arguments(rng: random.Random) -> dict:
    args: dict = {}
    for _ in range(rng.randint(0, 4)):
        roll = rng.random()
        if roll < 0.45:
            args["arg%d" % rng.randint(0, 3) if rng.random() < 0.3 else rng.choice(
                ["filepath", "regkey", "url", "module", "buffer", "hostname"]
            )] = _text_value(rng)
        elif roll < 0.85:
            args[rng.choice(["size", "port", "flags", "access", "offset", "pid"])] = rng.choice(
                [0, 1, 22, 80, 443, rng.randint(-(2**31), 2**31), rng.randint(0, 2**48)]
            )
        elif roll < 0.92:
            args["enabled"] = rng.random() < 0.5
        else:
            args["extra"] = None if rng.random() < 0.5 else [1, 2, 3]
    return args


def make_report(rng: random.Random) -> dict:
    n_processes = rng.randint(1, 3)
    total_calls = rng.randint(60, 180)
    per_process = [total_calls // n_processes] * n_processes
    per_process[0] += total_calls - sum(per_process)
    processes = []
    for pid, n_calls in enumerate(per_process):
        calls = []
        while len(calls) < n_calls:
            api, category = rng.choice(APIS)
            call = {"api": api, "category": category, "arguments": _arguments(rng)}
            calls.append(call)
            # consecutive repeats, so dedup has realistic work
            while rng.random() < 0.25 and len(calls) < n_calls:
                calls.append(json.loads(json.dumps(call)))
        processes.append({"process_id": 1000 + pid, "process_name": "proc%d.exe" % pid, "calls": calls})
    return {"info": {"id": "fixture"}, "behavior": {"processes": processes}}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="fixtures/corpus50")
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--seed", type=int, default=20240501)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    labels = []
    for i in range(args.count):
        report = make_report(rng)
        name = f"report-{i:03d}"
        (out / f"{name}.json").write_text(
            json.dumps(report, sort_keys=True, ensure_ascii=True), encoding="utf-8"
        )
        labels.append((name, rng.randint(0, 1)))
    label_lines = ["sample_id,label"] + [f"{name},{label}" for name, label in labels]
    (out / "labels.csv").write_text("\n".join(label_lines) + "\n", encoding="utf-8")
    print(f"wrote {args.count} reports + labels.csv to {out}")


if __name__ == "__main__":
    main()
