"""Classification of argument strings and hierarchical substring expansion.

Every text argument maps to exactly one :class:`StringKind`, decided by the
first matching predicate in a fixed precedence order:

    RegistryKey -> Url -> Ip -> Dll -> Path -> PrintableOther -> NonPrintable

Registry keys are unambiguous prefixes, URLs and IPs have strict grammars,
and a ``.dll`` suffix is more specific than a generic path, so the order is
stable even for strings matching several predicates (a DLL given with its
full path classifies as Dll).

Expansion preserves the case of its input; the vectorizer lowercases
Windows-style values (paths, DLLs, registry keys) before expanding so that
semantically identical values collide, while the expansion of a literal like
``C:\\a\\b\\c`` stays reproducible character for character.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass


class StringKind(enum.Enum):
    PATH = "path"
    DLL = "dll"
    REGISTRY_KEY = "registry_key"
    URL = "url"
    IP = "ip"
    PRINTABLE_OTHER = "printable_other"
    NON_PRINTABLE = "non_printable"


@dataclass(frozen=True, slots=True)
class SubstringExpansion:
    kind: StringKind
    parts: tuple[str, ...]


class MalformedUrl(ValueError):
    """URL-classified string with no extractable hostname."""


_URL_SCHEMES = ("http", "https", "ftp")
_IP_RE = re.compile(r"\d{1,3}\.\d{1,3}\.\d{1,3}\.\d{1,3}")
# Printable means 0x20..0x7f inclusive; runs shorter than 4 characters are
# dropped, mirroring the conventional strings-extraction threshold.
_PRINTABLE_RUN_RE = re.compile(r"[\x20-\x7f]{4,}")
_ALL_PRINTABLE_RE = re.compile(r"[\x20-\x7f]+")

_SEP = "\\"


def _is_url(value: str) -> bool:
    marker = value.find("://", 0, 8)  # bounded: longest scheme is "https"
    return 0 < marker <= 5 and value[:marker].lower() in _URL_SCHEMES


def _is_ip(value: str) -> bool:
    if not _IP_RE.fullmatch(value):
        return False
    return all(int(octet) <= 255 for octet in value.split("."))


def _is_path(value: str) -> bool:
    if value.startswith("\\\\"):
        return True
    return len(value) >= 3 and value[0].isalpha() and value[1] == ":" and value[2] == "\\"


def classify(value: str) -> StringKind:
    """First matching kind in precedence order; total over all strings."""
    if value[:5].lower() == "hkey_":
        return StringKind.REGISTRY_KEY
    if _is_url(value):
        return StringKind.URL
    if _is_ip(value):
        return StringKind.IP
    if value[-4:].lower() == ".dll":
        return StringKind.DLL
    if _is_path(value):
        return StringKind.PATH
    if value and _ALL_PRINTABLE_RE.fullmatch(value):
        return StringKind.PRINTABLE_OTHER
    return StringKind.NON_PRINTABLE


def normalize(value: str, kind: StringKind) -> str:
    """Case normalization applied before expansion and hashing.

    Windows resolves paths, DLL names and registry keys case-insensitively,
    so those kinds are lowercased; everything else is left untouched (URLs
    lowercase the hostname inside :func:`expand_url`).
    """
    if kind in (StringKind.PATH, StringKind.DLL, StringKind.REGISTRY_KEY):
        return value.lower()
    return value


def expand_path(value: str, kind: StringKind = StringKind.PATH) -> SubstringExpansion:
    """Prefix chain of backslash-delimited components, root first.

    ``C:\\a\\b\\c`` expands to ``C:``, ``C:\\a``, ``C:\\a\\b``, ``C:\\a\\b\\c``.
    Registry keys and DLL paths use the same rule; a bare DLL name is its own
    single part.  Trailing separators are stripped and empty components
    (doubled separators) are collapsed.
    """
    stripped = value.rstrip(_SEP)
    root = "\\\\" if value.startswith("\\\\") else ""
    components = [piece for piece in stripped.split(_SEP) if piece]
    if not components:
        return SubstringExpansion(kind, (stripped or value,))
    parts = [root + components[0]]
    for component in components[1:]:
        parts.append(parts[-1] + _SEP + component)
    return SubstringExpansion(kind, tuple(parts))


def expand_url(value: str) -> SubstringExpansion:
    """Dot-separated suffixes of the URL's hostname, shortest first.

    ``https://security.ai.cs.org/`` expands to ``org``, ``cs.org``,
    ``ai.cs.org``, ``security.ai.cs.org``.  Hostnames are lowercased; userinfo
    and port are stripped.  Raises :class:`MalformedUrl` when no hostname can
    be extracted (the caller then hashes nothing for the URL bins).
    """
    rest = value[value.find("://") + 3 :]
    authority = rest.split("/", 1)[0]
    host = authority.rsplit("@", 1)[-1].split(":", 1)[0].lower()
    labels = [label for label in host.split(".") if label]
    if not labels:
        raise MalformedUrl(f"no hostname in {value!r}")
    suffixes = []
    for label in reversed(labels):
        suffixes.append(label if not suffixes else label + "." + suffixes[-1])
    return SubstringExpansion(StringKind.URL, tuple(suffixes))


def expand_ip(value: str) -> SubstringExpansion:
    """Dot-separated prefixes: ``a``, ``a.b``, ``a.b.c``, ``a.b.c.d``."""
    octets = value.split(".")
    parts = [octets[0]]
    for octet in octets[1:]:
        parts.append(parts[-1] + "." + octet)
    return SubstringExpansion(StringKind.IP, tuple(parts))


def printable_substrings(value: str) -> list[str]:
    """Maximal printable runs (0x20..0x7f) of length >= 4, in order."""
    return _PRINTABLE_RUN_RE.findall(value)
