"""Domain records shared across the extraction pipeline.

Argument values are kept deliberately lightweight: an ``int`` is an integer
argument (booleans are coerced to 0/1 at parse time), a ``str`` is a text
argument, and ``None`` marks a payload we do not encode (nulls, lists,
nested objects, non-integral numbers).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ArgValue = int | str | None


@dataclass(frozen=True, slots=True)
class ApiCallRecord:
    """One hooked API call: name, category and its argument pairs.

    ``args`` is canonicalized at parse time (sorted by argument name) so that
    digests and feature vectors do not depend on JSON map iteration order.
    """

    name: str
    category: str
    args: tuple[tuple[str, ArgValue], ...]
    call_index: int


@dataclass(frozen=True, slots=True)
class CallSequence:
    """Ordered call trace for one sample.

    ``raw_count`` is the pre-dedup length; ``calls`` holds whatever stage the
    sequence is at (straight out of the parser it still contains consecutive
    repeats).
    """

    sample_id: str
    calls: tuple[ApiCallRecord, ...]
    raw_count: int


@dataclass(slots=True)
class SampleMatrix:
    """Per-sample feature matrix: one 102-wide float32 row per deduped call."""

    sample_id: str
    rows: np.ndarray
    label: int | None = None
    max_len: int = 1000

    @property
    def row_count(self) -> int:
        return int(self.rows.shape[0])
