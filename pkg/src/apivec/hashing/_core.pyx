# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hashing kernels.

Bit-identical counterpart of :mod:`apivec.hashing.pure`; selected at import
when the extension is available.  Keep the arithmetic in lockstep with the
pure module: any change here is a format change and must bump the hash
format version.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.math cimport fabs, log


cdef extern from "Python.h":
    const char* PyUnicode_AsUTF8AndSize(object unicode, Py_ssize_t* size) except NULL

cdef uint64_t _OFFSET = 0xCBF29CE484222325ULL
cdef uint64_t _PRIME = 0x100000001B3ULL
cdef uint64_t _INDEX_SEED = 0x0ULL
cdef uint64_t _SIGN_SEED = 0x9E3779B97F4A7C15ULL

FNV64_OFFSET = _OFFSET
FNV64_PRIME = _PRIME
INDEX_SEED = _INDEX_SEED
SIGN_SEED = _SIGN_SEED


cdef inline uint64_t _fnv1a64(const unsigned char* buf, Py_ssize_t n, uint64_t seed) noexcept nogil:
    cdef uint64_t h = _OFFSET ^ seed
    cdef Py_ssize_t i
    for i in range(n):
        h ^= buf[i]
        h *= _PRIME
    return h


def fnv1a64(data: bytes, seed: int = 0) -> int:
    """64-bit FNV-1a over ``data``, with ``seed`` XORed into the offset basis."""
    cdef const unsigned char[::1] view = data
    cdef uint64_t s = seed
    if view.shape[0] == 0:
        return _OFFSET ^ s
    return _fnv1a64(&view[0], view.shape[0], s)


def hash_index(element: str, m: int) -> int:
    """Bin index in [0, m) for one element."""
    if m < 1:
        raise ValueError(f"bin count must be >= 1, got {m}")
    cdef Py_ssize_t n = 0
    cdef const char* buf = PyUnicode_AsUTF8AndSize(element, &n)
    return _fnv1a64(<const unsigned char*> buf, n, _INDEX_SEED) % <uint64_t> m


def hash_sign(element: str) -> int:
    """+1 or -1, from the low bit of the sign-seeded hash."""
    cdef Py_ssize_t n = 0
    cdef const char* buf = PyUnicode_AsUTF8AndSize(element, &n)
    if _fnv1a64(<const unsigned char*> buf, n, _SIGN_SEED) & 1ULL == 0ULL:
        return 1
    return -1


def accumulate_strings(elements, m, double[::1] out, offset=0):
    """Add the signed count of each element into ``out[offset:offset+m]``."""
    cdef Py_ssize_t width = m
    cdef Py_ssize_t base = offset
    if width < 1:
        raise ValueError(f"bin count must be >= 1, got {m}")
    if base < 0 or base + width > out.shape[0]:
        raise ValueError("output slice out of range")
    cdef Py_ssize_t n = 0
    cdef const char* buf
    cdef const unsigned char* ubuf
    cdef uint64_t h, s
    cdef Py_ssize_t i
    for element in elements:
        buf = PyUnicode_AsUTF8AndSize(element, &n)
        ubuf = <const unsigned char*> buf
        h = _OFFSET ^ _INDEX_SEED
        s = _OFFSET ^ _SIGN_SEED
        for i in range(n):
            h ^= ubuf[i]
            h *= _PRIME
            s ^= ubuf[i]
            s *= _PRIME
        if s & 1ULL == 0ULL:
            out[base + <Py_ssize_t> (h % <uint64_t> width)] += 1.0
        else:
            out[base + <Py_ssize_t> (h % <uint64_t> width)] -= 1.0


def accumulate_int_pairs(pairs, m, double[::1] out, offset=0):
    """Add sign(name) * ln(|value| + 1) into the bin indexed by each name."""
    cdef Py_ssize_t width = m
    cdef Py_ssize_t base = offset
    if width < 1:
        raise ValueError(f"bin count must be >= 1, got {m}")
    if base < 0 or base + width > out.shape[0]:
        raise ValueError("output slice out of range")
    cdef Py_ssize_t n = 0
    cdef const char* buf
    cdef int64_t value
    cdef double magnitude, sign
    cdef uint64_t h
    for name, raw in pairs:
        value = raw  # OverflowError for anything outside int64, as in pure.py
        buf = PyUnicode_AsUTF8AndSize(name, &n)
        magnitude = log(fabs(<double> value) + 1.0)
        h = _fnv1a64(<const unsigned char*> buf, n, _INDEX_SEED)
        if _fnv1a64(<const unsigned char*> buf, n, _SIGN_SEED) & 1ULL == 0ULL:
            sign = 1.0
        else:
            sign = -1.0
        out[base + <Py_ssize_t> (h % <uint64_t> width)] += sign * magnitude
