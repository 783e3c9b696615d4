"""Pure-Python hashing kernels.

Reference implementation of the signed feature-hashing primitives; the
compiled backend in ``_core.pyx`` must stay bit-identical to this module.
Strings are hashed over their UTF-8 bytes with 64-bit FNV-1a; the bin index
and the sign come from two differently seeded instances of the same hash
(the seed is XORed into the offset basis, so seed 0 is plain FNV-1a).
"""

from __future__ import annotations

import math

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1

INDEX_SEED = 0x0
SIGN_SEED = 0x9E3779B97F4A7C15

_INT64_MIN = -(1 << 63)
_INT64_MAX = (1 << 63) - 1


def fnv1a64(data: bytes, seed: int = 0) -> int:
    """64-bit FNV-1a over ``data``, with ``seed`` XORed into the offset basis."""
    h = (FNV64_OFFSET ^ seed) & _MASK64
    for byte in data:
        h = ((h ^ byte) * FNV64_PRIME) & _MASK64
    return h


def hash_index(element: str, m: int) -> int:
    """Bin index in [0, m) for one element."""
    if m < 1:
        raise ValueError(f"bin count must be >= 1, got {m}")
    if not isinstance(element, str):
        raise TypeError(f"expected str, got {type(element).__name__}")
    return fnv1a64(element.encode("utf-8"), INDEX_SEED) % m


def hash_sign(element: str) -> int:
    """+1 or -1, from the low bit of the sign-seeded hash."""
    if not isinstance(element, str):
        raise TypeError(f"expected str, got {type(element).__name__}")
    return 1 if fnv1a64(element.encode("utf-8"), SIGN_SEED) & 1 == 0 else -1


def accumulate_strings(elements, m, out, offset=0) -> None:
    """Add the signed count of each element into ``out[offset:offset+m]``."""
    if m < 1:
        raise ValueError(f"bin count must be >= 1, got {m}")
    offset_basis = FNV64_OFFSET
    sign_basis = FNV64_OFFSET ^ SIGN_SEED
    prime = FNV64_PRIME
    mask = _MASK64
    for element in elements:
        if not isinstance(element, str):
            raise TypeError(f"expected str, got {type(element).__name__}")
        data = element.encode("utf-8")
        h = offset_basis
        s = sign_basis
        for byte in data:
            h = ((h ^ byte) * prime) & mask
            s = ((s ^ byte) * prime) & mask
        out[offset + h % m] += 1.0 if s & 1 == 0 else -1.0


def accumulate_int_pairs(pairs, m, out, offset=0) -> None:
    """Add sign(name) * ln(|value| + 1) into the bin indexed by each name."""
    if m < 1:
        raise ValueError(f"bin count must be >= 1, got {m}")
    for name, value in pairs:
        if not isinstance(name, str):
            raise TypeError(f"expected str, got {type(name).__name__}")
        if not _INT64_MIN <= value <= _INT64_MAX:
            raise OverflowError(f"integer argument out of int64 range: {value}")
        # float() before the +1.0 keeps this bit-identical to the compiled
        # backend (which converts int64 -> double first).
        magnitude = math.log(float(abs(value)) + 1.0)
        data = name.encode("utf-8")
        index = fnv1a64(data, INDEX_SEED) % m
        sign = 1.0 if fnv1a64(data, SIGN_SEED) & 1 == 0 else -1.0
        out[offset + index] += sign * magnitude
