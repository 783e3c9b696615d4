"""Signed feature-hashing kernels with a compiled core and a pure fallback.

The compiled backend (``apivec.hashing._core``, Cython) is used when it was
built; otherwise the pure-Python module takes over.  Both produce bit-exact
identical output.  Set ``APIVEC_PURE_PYTHON=1`` to force the fallback, or call
:func:`use_backend` (intended for tests and benchmarks).

``hash_index``/``hash_sign`` map an element to a bin and a +/-1 sign;
``feature_hash_strings`` sums signs per bin, ``feature_hash_ints`` sums
sign(name) * ln(|value| + 1) per name-indexed bin.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

import numpy as np

from . import pure

FNV64_OFFSET = pure.FNV64_OFFSET
FNV64_PRIME = pure.FNV64_PRIME
INDEX_SEED = pure.INDEX_SEED
SIGN_SEED = pure.SIGN_SEED

# Bump whenever the hash constants or the accumulation arithmetic change:
# the dataset format is defined by these outputs.
HASH_FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class HashSpec:
    """Deterministic hash configuration, recorded in dataset manifests."""

    algorithm: str = "fnv1a64"
    index_seed: int = INDEX_SEED
    sign_seed: int = SIGN_SEED
    version: int = HASH_FORMAT_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict) -> "HashSpec":
        return cls(**raw)


def _load_backend(name: str):
    if name == "cython":
        from . import _core

        return _core
    if name == "pure":
        return pure
    raise ValueError(f"unknown hashing backend: {name!r}")


def _autodetect() -> str:
    if os.environ.get("APIVEC_PURE_PYTHON", "") not in ("", "0"):
        return "pure"
    try:
        _load_backend("cython")
    except ImportError:
        return "pure"
    return "cython"


BACKEND = _autodetect()
_impl = _load_backend(BACKEND)

fnv1a64 = _impl.fnv1a64
hash_index = _impl.hash_index
hash_sign = _impl.hash_sign
accumulate_strings = _impl.accumulate_strings
accumulate_int_pairs = _impl.accumulate_int_pairs


def use_backend(name: str) -> str:
    """Switch the active backend ("cython" or "pure"); returns the old name.

    Rebinds module-level functions; not thread-safe, meant for tests and the
    backend benchmark only.
    """
    global BACKEND, _impl, fnv1a64, hash_index, hash_sign
    global accumulate_strings, accumulate_int_pairs
    impl = _load_backend(name)
    previous = BACKEND
    BACKEND = name
    _impl = impl
    fnv1a64 = impl.fnv1a64
    hash_index = impl.hash_index
    hash_sign = impl.hash_sign
    accumulate_strings = impl.accumulate_strings
    accumulate_int_pairs = impl.accumulate_int_pairs
    return previous


def feature_hash_strings(elements, m: int) -> np.ndarray:
    """Hash a sequence of strings into ``m`` signed bins (float64)."""
    out = np.zeros(m, dtype=np.float64)
    accumulate_strings(elements, m, out, 0)
    return out


def feature_hash_ints(pairs, m: int) -> np.ndarray:
    """Hash (name, int value) pairs into ``m`` log-magnitude bins (float64)."""
    out = np.zeros(m, dtype=np.float64)
    accumulate_int_pairs(pairs, m, out, 0)
    return out
