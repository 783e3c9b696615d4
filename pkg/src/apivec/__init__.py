"""apivec: deterministic feature-hashing extraction for API-call traces.

Pipeline: parse a sandbox report (:mod:`apivec.ingest`), drop consecutive
repeats, turn every call into a fixed 102-wide vector
(:mod:`apivec.vectorize` over the kernels in :mod:`apivec.hashing`), and
persist per-sample matrices in a portable binary + manifest format
(:mod:`apivec.dataset`).  The ``apivec`` CLI batches this over report
directories.
"""

from .hashing import HashSpec, feature_hash_ints, feature_hash_strings, hash_index, hash_sign
from .ingest import (
    EmptyTrace,
    MalformedReport,
    dedup_consecutive,
    dedup_digest,
    dedup_sequence,
    parse_report,
)
from .records import ApiCallRecord, ArgValue, CallSequence, SampleMatrix
from .strtype import (
    MalformedUrl,
    StringKind,
    classify,
    expand_ip,
    expand_path,
    expand_url,
    printable_substrings,
)
from .vectorize import (
    DEFAULT_MAX_LEN,
    EmptySequence,
    build_sample,
    compute_string_stats,
    split_camel,
    vectorize_call,
)
from .dataset import export_csv, import_csv, read_dataset, read_manifest, write_dataset

__version__ = "1.0.0"

__all__ = [
    "ApiCallRecord",
    "ArgValue",
    "CallSequence",
    "DEFAULT_MAX_LEN",
    "EmptySequence",
    "EmptyTrace",
    "HashSpec",
    "MalformedReport",
    "MalformedUrl",
    "SampleMatrix",
    "StringKind",
    "build_sample",
    "classify",
    "compute_string_stats",
    "dedup_consecutive",
    "dedup_digest",
    "dedup_sequence",
    "expand_ip",
    "expand_path",
    "expand_url",
    "export_csv",
    "feature_hash_ints",
    "feature_hash_strings",
    "hash_index",
    "hash_sign",
    "import_csv",
    "parse_report",
    "printable_substrings",
    "read_dataset",
    "read_manifest",
    "split_camel",
    "vectorize_call",
    "write_dataset",
]
