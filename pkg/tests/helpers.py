"""Shared generators for randomized tests: synthetic calls and reports."""

from __future__ import annotations

import json
import random

from apivec.records import ApiCallRecord

API_NAMES = [
    "GetFileSize",
    "NtCreateFile",
    "NtOpenKeyEx",
    "RegSetValueExA",
    "LoadLibraryA",
    "InternetOpenUrlA",
    "WriteProcessMemory",
    "CreateRemoteThread",
    "GetDLLName",
    "connect",
]

CATEGORIES = ["file", "registry", "network", "process", "system", ""]

TEXT_POOL = [
    "C:\\Windows\\system32\\kernel32.dll",
    "C:\\Users\\victim\\AppData\\run.exe",
    "HKEY_LOCAL_MACHINE\\Software\\Microsoft\\Windows\\CurrentVersion\\Run",
    "https://security.ai.cs.org/",
    "http://bad.example.net/payload?id=1",
    "192.168.0.1",
    "10.0.0.255",
    "kernel32.dll",
    "MZ\x90\x00\x03 this buffer smells like a PE header",
    "plain printable text",
    "\x01\x02tiny",
    "snippet with\x00embedded nulls and more text",
    "",
]

ARG_NAMES = ["filepath", "size", "port", "flags", "regkey", "url", "buffer", "module", "x"]


def random_call(rng: random.Random, call_index: int = 0) -> ApiCallRecord:
    n_args = rng.randint(0, 5)
    args = []
    for _ in range(n_args):
        name = rng.choice(ARG_NAMES)
        roll = rng.random()
        if roll < 0.4:
            value: object = rng.choice(TEXT_POOL)
        elif roll < 0.8:
            value = rng.randint(-(2**40), 2**40)
        else:
            value = None
        args.append((name, value))
    return ApiCallRecord(
        name=rng.choice(API_NAMES),
        category=rng.choice(CATEGORIES),
        args=tuple(sorted(args, key=lambda kv: kv[0])),
        call_index=call_index,
    )


def random_call_list(rng: random.Random, max_calls: int = 30) -> list[ApiCallRecord]:
    calls = []
    while len(calls) < rng.randint(1, max_calls):
        call = random_call(rng, call_index=len(calls))
        calls.append(call)
        # inject consecutive repeats so dedup has work to do
        while rng.random() < 0.35 and len(calls) < max_calls:
            calls.append(
                ApiCallRecord(call.name, call.category, call.args, len(calls))
            )
    return calls


def report_json(calls_per_process: list[list[dict]], info_id: str = "r") -> bytes:
    """Assemble a sandbox-format report document from raw call dicts."""
    return json.dumps(
        {
            "info": {"id": info_id},
            "behavior": {
                "processes": [
                    {"process_id": pid + 1, "calls": calls}
                    for pid, calls in enumerate(calls_per_process)
                ]
            },
        }
    ).encode("utf-8")
