"""Fixed 102-column layout of the per-call feature vector.

Sections, in order: API-name words (8 bins), category characters (4),
integer arguments (16), then the string-argument families -- paths (16),
DLLs (8), registry keys (12), URLs (16), IPs (12) -- and 10 statistics over
all printable strings.
"""

from __future__ import annotations

SECTIONS: tuple[tuple[str, int], ...] = (
    ("name", 8),
    ("cat", 4),
    ("int", 16),
    ("path", 16),
    ("dll", 8),
    ("reg", 12),
    ("url", 16),
    ("ip", 12),
    ("stat", 10),
)

TOTAL_WIDTH = sum(width for _, width in SECTIONS)  # 102

STAT_NAMES = (
    "numStrings",
    "avLength",
    "numChars",
    "entropy",
    "numPaths",
    "numDlls",
    "numUrls",
    "numIPs",
    "numRegistryKeys",
    "numMZ",
)


def _build_slices() -> dict[str, slice]:
    slices = {}
    start = 0
    for key, width in SECTIONS:
        slices[key] = slice(start, start + width)
        start += width
    return slices


SLICES = _build_slices()

NAME = SLICES["name"]
CAT = SLICES["cat"]
INT = SLICES["int"]
PATH = SLICES["path"]
DLL = SLICES["dll"]
REG = SLICES["reg"]
URL = SLICES["url"]
IP = SLICES["ip"]
STAT = SLICES["stat"]


def csv_header() -> list[str]:
    """Column names for CSV export: name_0..name_7, ..., stat_numMZ."""
    columns: list[str] = []
    for key, width in SECTIONS:
        if key == "stat":
            columns.extend(f"stat_{stat}" for stat in STAT_NAMES)
        else:
            columns.extend(f"{key}_{i}" for i in range(width))
    return columns
