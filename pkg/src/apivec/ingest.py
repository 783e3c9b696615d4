"""Sandbox report parsing and consecutive-duplicate removal.

Reports are the sandbox's JSON documents; we read
``behavior.processes[*].calls[*]`` with fields ``api``, ``category`` and
``arguments`` (a name -> value map), concatenating the calls of all
processes in report order.  Argument maps are canonicalized by sorting names
lexicographically so downstream digests and vectors never depend on parser
iteration order.
"""

from __future__ import annotations

import hashlib
import json

from .records import ApiCallRecord, ArgValue, CallSequence

_INT64_MIN = -(1 << 63)
_INT64_MAX = (1 << 63) - 1


class MalformedReport(ValueError):
    """Report document that cannot be parsed into a call list."""


class EmptyTrace(ValueError):
    """Well-formed report with zero hooked calls."""


def _coerce_value(raw: object) -> ArgValue:
    # Only integers and strings are encoded; booleans count as 0/1 integers,
    # everything else (null, floats, lists, nested objects) is ignored.
    if isinstance(raw, bool):
        return int(raw)
    if isinstance(raw, int):
        # Out-of-range integers saturate so every stage agrees on one value.
        return min(max(raw, _INT64_MIN), _INT64_MAX)
    if isinstance(raw, str):
        return raw
    return None


def _parse_call(entry: object, call_index: int) -> ApiCallRecord:
    if not isinstance(entry, dict):
        raise MalformedReport(f"call #{call_index} is not an object")
    name = entry.get("api")
    if not isinstance(name, str) or not name:
        raise MalformedReport(f"call #{call_index} has no api name")
    category = entry.get("category", "")
    if not isinstance(category, str):
        raise MalformedReport(f"call #{call_index} has a non-string category")
    arguments = entry.get("arguments", {})
    if not isinstance(arguments, dict):
        raise MalformedReport(f"call #{call_index} arguments are not a map")
    args = tuple(
        (arg_name, _coerce_value(raw))
        for arg_name, raw in sorted(arguments.items(), key=lambda item: item[0])
    )
    return ApiCallRecord(name=name, category=category, args=args, call_index=call_index)


def parse_report(data: bytes | str, sample_id: str = "") -> CallSequence:
    """Parse one report document into a raw (not yet deduped) CallSequence.

    Raises :class:`MalformedReport` for documents that are not valid JSON or
    do not contain a ``behavior.processes[*].calls`` list, and
    :class:`EmptyTrace` when the report holds zero calls.
    """
    try:
        doc = json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise MalformedReport(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedReport("top-level document is not an object")
    behavior = doc.get("behavior")
    if not isinstance(behavior, dict):
        raise MalformedReport("missing behavior section")
    processes = behavior.get("processes")
    if not isinstance(processes, list):
        raise MalformedReport("behavior.processes is not a list")

    calls: list[ApiCallRecord] = []
    for process in processes:
        if not isinstance(process, dict):
            raise MalformedReport("process entry is not an object")
        entries = process.get("calls", [])
        if not isinstance(entries, list):
            raise MalformedReport("process calls are not a list")
        for entry in entries:
            calls.append(_parse_call(entry, len(calls)))
    if not calls:
        raise EmptyTrace(f"report {sample_id or '<unnamed>'} has zero calls")
    return CallSequence(sample_id=sample_id, calls=tuple(calls), raw_count=len(calls))


def _render_value(value: ArgValue) -> bytes:
    if value is None:
        return b""
    if isinstance(value, int):
        return b"%d" % value
    # surrogatepass keeps the digest faithful to the original bytes even for
    # values that only the report's JSON escapes could produce.
    return value.encode("utf-8", "surrogatepass")


def dedup_digest(call: ApiCallRecord) -> bytes:
    """128-bit MD5 digest over the call's canonical serialization.

    Layout: name, 0x00, category, 0x00, then ``argname=value`` entries joined
    by 0x00 in record order (integers in base 10, ignored payloads empty).
    """
    pieces = [call.name.encode("utf-8", "surrogatepass"),
              call.category.encode("utf-8", "surrogatepass")]
    pieces.append(b"\x00".join(
        name.encode("utf-8", "surrogatepass") + b"=" + _render_value(value)
        for name, value in call.args
    ))
    return hashlib.md5(b"\x00".join(pieces)).digest()


def dedup_consecutive(calls) -> list[ApiCallRecord]:
    """Collapse runs of digest-identical calls, keeping the first of each run."""
    kept: list[ApiCallRecord] = []
    previous = None
    for call in calls:
        digest = dedup_digest(call)
        if digest != previous:
            kept.append(call)
            previous = digest
    return kept


def dedup_sequence(seq: CallSequence) -> CallSequence:
    """Return the sequence with consecutive repeats removed."""
    return CallSequence(
        sample_id=seq.sample_id,
        calls=tuple(dedup_consecutive(seq.calls)),
        raw_count=seq.raw_count,
    )
