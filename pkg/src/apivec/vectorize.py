"""Per-call feature vector assembly and per-sample matrix construction.

One call becomes one 102-wide vector (see :mod:`apivec.layout`): API-name
words and category characters are feature-hashed, integer arguments are
hashed by name with log-squashed magnitudes, string arguments are classified
and their hierarchical substrings hashed into per-kind bins, and 10
statistics summarize all printable strings.
"""

from __future__ import annotations

import math
import re
from collections import Counter

import numpy as np

from . import hashing, layout
from .records import ApiCallRecord, CallSequence, SampleMatrix
from .strtype import (
    MalformedUrl,
    StringKind,
    classify,
    expand_ip,
    expand_path,
    expand_url,
    normalize,
    printable_substrings,
)

DEFAULT_MAX_LEN = 1000

# Word boundaries: before an uppercase letter following a lowercase letter or
# digit, and before the last letter of an uppercase run followed by lowercase
# ("GetDLLName" -> Get/DLL/Name).  Digits stay attached to the preceding word.
_CAMEL_EDGE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")

_KIND_SLICES = {
    StringKind.PATH: layout.PATH,
    StringKind.DLL: layout.DLL,
    StringKind.REGISTRY_KEY: layout.REG,
    StringKind.URL: layout.URL,
    StringKind.IP: layout.IP,
}

_KIND_COUNTER_INDEX = {
    StringKind.PATH: 4,
    StringKind.DLL: 5,
    StringKind.URL: 6,
    StringKind.IP: 7,
    StringKind.REGISTRY_KEY: 8,
}


class EmptySequence(ValueError):
    """Sample with no calls left to vectorize."""


def split_camel(name: str) -> list[str]:
    """Split an API name on camel-case word boundaries."""
    return [word for word in _CAMEL_EDGE.split(name) if word]


def _sanitize(value: str) -> str:
    # Typing and hashing see well-formed text; lone surrogates (possible via
    # JSON escapes) become U+FFFD.  The dedup digest keeps the original.
    try:
        value.encode("utf-8")
        return value
    except UnicodeEncodeError:
        return value.encode("utf-16", "surrogatepass").decode("utf-16", "replace")


def expansion_parts(value: str, kind: StringKind) -> tuple[str, ...]:
    """Substrings hashed for a classified string; empty for unexpandable kinds."""
    if kind in (StringKind.PATH, StringKind.DLL, StringKind.REGISTRY_KEY):
        return expand_path(normalize(value, kind), kind).parts
    if kind is StringKind.URL:
        try:
            return expand_url(value).parts
        except MalformedUrl:
            return ()
    if kind is StringKind.IP:
        return expand_ip(value).parts
    return ()


def compute_string_stats(text_args) -> list[float]:
    """The 10 statistics over printable strings pooled from all text args.

    Order: numStrings, avLength, numChars, entropy, numPaths, numDlls,
    numUrls, numIPs, numRegistryKeys, numMZ.  Entropy is Shannon entropy in
    bits over the pooled character distribution.
    """
    strings: list[str] = []
    for value in text_args:
        strings.extend(printable_substrings(value))
    if not strings:
        return [0.0] * 10

    stats = [0.0] * 10
    total_chars = 0
    frequencies: Counter[str] = Counter()
    for s in strings:
        total_chars += len(s)
        frequencies.update(s)
        kind = classify(s)
        counter = _KIND_COUNTER_INDEX.get(kind)
        if counter is not None:
            stats[counter] += 1.0
        if s.startswith("MZ"):
            stats[9] += 1.0

    entropy = 0.0
    for count in frequencies.values():
        p = count / total_chars
        entropy -= p * math.log2(p)

    stats[0] = float(len(strings))
    stats[1] = total_chars / len(strings)
    stats[2] = float(total_chars)
    stats[3] = entropy
    return stats


def vectorize_call(call: ApiCallRecord) -> np.ndarray:
    """One call -> one 102-wide float64 vector (layout in apivec.layout)."""
    vec = np.zeros(layout.TOTAL_WIDTH, dtype=np.float64)

    hashing.accumulate_strings(split_camel(_sanitize(call.name)), 8, vec, layout.NAME.start)
    if call.category:
        hashing.accumulate_strings(list(_sanitize(call.category)), 4, vec, layout.CAT.start)

    int_pairs: list[tuple[str, int]] = []
    text_values: list[str] = []
    for arg_name, value in call.args:
        if isinstance(value, str):
            text_values.append(_sanitize(value))
        elif isinstance(value, int):
            int_pairs.append((_sanitize(arg_name), value))
    if int_pairs:
        hashing.accumulate_int_pairs(int_pairs, 16, vec, layout.INT.start)

    parts_by_kind: dict[StringKind, list[str]] = {}
    for value in text_values:
        kind = classify(value)
        parts = expansion_parts(value, kind)
        if parts:
            parts_by_kind.setdefault(kind, []).extend(parts)
    for kind, parts in parts_by_kind.items():
        section = _KIND_SLICES[kind]
        hashing.accumulate_strings(parts, section.stop - section.start, vec, section.start)

    if text_values:
        vec[layout.STAT] = compute_string_stats(text_values)
    return vec


def build_sample(
    seq: CallSequence,
    label: int | None = None,
    max_len: int = DEFAULT_MAX_LEN,
) -> SampleMatrix:
    """Vectorize the first ``max_len`` calls of a (deduped) sequence.

    Sequences longer than ``max_len`` are truncated at the tail (early calls
    carry the unpacking/injection behaviour); no padding is stored.
    """
    if not seq.calls:
        raise EmptySequence(f"sample {seq.sample_id!r} has no calls")
    rows = np.stack([vectorize_call(call) for call in seq.calls[:max_len]])
    return SampleMatrix(
        sample_id=seq.sample_id,
        rows=rows.astype(np.float32),
        label=label,
        max_len=max_len,
    )
