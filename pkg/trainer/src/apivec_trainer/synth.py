"""Synthetic labeled corpus generator for desk-scale end-to-end runs.

Emits sandbox-format report documents (the same JSON layout the extractor
consumes) plus a ``labels.csv``.  Malicious samples carry planted, separable
signals spanning every feature family: persistence registry keys under a
distinctive prefix, dropped executables in a staging directory, beacon URLs
and raw-IP connections on an unusual port, MZ-prefixed buffers, and an
injection-style call trigram.  Benign samples draw from ordinary
file/registry/network activity.  Generation is deterministic per seed.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

BENIGN_APIS = [
    ("NtCreateFile", "file"),
    ("NtReadFile", "file"),
    ("NtWriteFile", "file"),
    ("GetFileSize", "file"),
    ("RegQueryValueExW", "registry"),
    ("LoadLibraryA", "system"),
    ("GetProcAddress", "system"),
    ("InternetOpenUrlA", "network"),
    ("connect", "network"),
]

BENIGN_DIRS = [
    "C:\\Program Files\\Common Files",
    "C:\\Users\\alice\\Documents",
    "C:\\Windows\\System32",
]
BENIGN_FILES = ["letter.docx", "notes.txt", "report.pdf", "app.ini"]
BENIGN_DLLS = ["kernel32.dll", "user32.dll", "shell32.dll", "comctl32.dll"]
BENIGN_KEYS = [
    "HKEY_CURRENT_USER\\Software\\Adobe\\Reader",
    "HKEY_LOCAL_MACHINE\\Software\\Microsoft\\Office\\Common",
]
BENIGN_HOSTS = ["update.office-svc.com", "cdn.docs.example.org"]
BENIGN_TEXT = ["open", "ReadOnly", "Times New Roman", "en-US locale pack"]

INJECTION_TRIGRAM = [
    ("NtAllocateVirtualMemory", "process"),
    ("WriteProcessMemory", "process"),
    ("CreateRemoteThread", "process"),
]
STAGING_DIR = "C:\\Users\\alice\\AppData\\Roaming\\WinStage"
PERSIST_KEY = "HKEY_LOCAL_MACHINE\\Software\\Microsoft\\Windows\\CurrentVersion\\Run\\WinStage"
BEACON_HOSTS = ["cc.stagenet.xyz", "panel.drop-zone.top"]
HOOK_DLL = "winstage_hook.dll"
# printable prefix must be >= 4 chars for the MZ counter to see it
MZ_BUFFER = "MZx86\x90\x00\x03\x00\x00\x00\x04\x00 PE payload staged for injection"


class IoFailure(Exception):
    pass


def _benign_call(rng: random.Random) -> dict:
    api, category = rng.choice(BENIGN_APIS)
    arguments: dict = {}
    roll = rng.random()
    if category == "file":
        arguments["filepath"] = rng.choice(BENIGN_DIRS) + "\\" + rng.choice(BENIGN_FILES)
        arguments["size"] = rng.randint(128, 1 << 20)
    elif category == "registry":
        arguments["regkey"] = rng.choice(BENIGN_KEYS)
        arguments["access"] = rng.choice([131097, 131078])
    elif category == "system":
        arguments["module"] = rng.choice(BENIGN_DLLS)
        arguments["flags"] = 0
    else:
        if roll < 0.7:
            arguments["url"] = f"https://{rng.choice(BENIGN_HOSTS)}/index.html"
        else:
            arguments["hostname"] = rng.choice(BENIGN_HOSTS)
        arguments["port"] = rng.choice([80, 443])
    if rng.random() < 0.25:
        arguments["comment"] = rng.choice(BENIGN_TEXT)
    return {"api": api, "category": category, "arguments": arguments}


def _stage_write(rng: random.Random) -> dict:
    return {
        "api": "NtWriteFile",
        "category": "file",
        "arguments": {
            "filepath": STAGING_DIR + f"\\stage{rng.randint(1, 9)}.exe",
            "buffer": MZ_BUFFER,
            "size": rng.randint(1 << 14, 1 << 22),
        },
    }


def _malicious_calls(rng: random.Random) -> list[dict]:
    """One planted behaviour burst (1-3 calls); spans every feature family."""
    choice = rng.random()
    if choice < 0.2:
        return [
            {
                "api": api,
                "category": category,
                "arguments": {
                    "buffer": MZ_BUFFER,
                    "process_handle": rng.randint(16, 4096),
                    "size": rng.randint(1 << 12, 1 << 20),
                },
            }
            for api, category in INJECTION_TRIGRAM
        ]
    if choice < 0.4:
        return [
            {
                "api": "RegSetValueExA",
                "category": "registry",
                "arguments": {
                    "regkey": PERSIST_KEY,
                    "value": STAGING_DIR + "\\svchost32.exe",
                },
            }
        ]
    if choice < 0.6:
        return [_stage_write(rng)]
    if choice < 0.8:
        return [
            {
                "api": rng.choice(["InternetOpenUrlA", "connect"]),
                "category": "network",
                "arguments": {
                    "url": f"http://{rng.choice(BEACON_HOSTS)}/gate.php?id={rng.randint(1, 999)}",
                    "ip": f"185.{rng.randint(10, 250)}.{rng.randint(0, 255)}.{rng.randint(1, 254)}",
                    "port": rng.choice([4444, 6667, 8081]),
                },
            }
        ]
    return [
        {
            "api": "LoadLibraryA",
            "category": "system",
            "arguments": {"module": HOOK_DLL, "flags": 8},
        }
    ]


def make_report(rng: random.Random, malicious: bool) -> dict:
    total = rng.randint(30, 70)
    calls: list[dict] = []
    while len(calls) < total:
        if malicious and rng.random() < 0.35:
            calls.extend(_malicious_calls(rng))
        else:
            calls.append(_benign_call(rng))
    if malicious and not any(
        call["arguments"].get("buffer") == MZ_BUFFER for call in calls
    ):
        calls[rng.randrange(len(calls))] = _stage_write(rng)
    return {
        "info": {"id": "synthetic"},
        "behavior": {"processes": [{"process_id": 100, "calls": calls}]},
    }


def generate_corpus(
    n_samples: int,
    malicious_fraction: float,
    seed: int,
    out_dir: str | Path,
) -> Path:
    """Write ``n_samples`` reports plus labels.csv; returns the label file path."""
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    if not 0.0 < malicious_fraction < 1.0:
        raise ValueError(f"malicious fraction must be in (0, 1): {malicious_fraction}")
    out = Path(out_dir)
    rng = random.Random(seed)
    n_malicious = max(1, round(n_samples * malicious_fraction))
    labels = [1] * n_malicious + [0] * (n_samples - n_malicious)
    rng.shuffle(labels)
    try:
        out.mkdir(parents=True, exist_ok=True)
        lines = ["sample_id,label"]
        for i, label in enumerate(labels):
            name = f"sample-{i:04d}"
            report = make_report(rng, malicious=bool(label))
            (out / f"{name}.json").write_text(
                json.dumps(report, sort_keys=True, ensure_ascii=True), encoding="utf-8"
            )
            lines.append(f"{name},{label}")
        label_file = out / "labels.csv"
        label_file.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write corpus to {out}: {exc}") from exc
    return label_file
