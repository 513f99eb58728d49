"""Stable hashing utilities for hyperrxn.

Fingerprint identifiers and dataset digests must not depend on the Python
process (``hash()`` is salted per interpreter) or on the platform, so both
are derived from :mod:`hashlib`.
"""

import hashlib
import struct
from typing import Iterable, Union

HASH_SEED = b"hyperrxn-fp-v1"

HashPart = Union[int, str, float, bool, None]


def stable_hash64(*parts: HashPart) -> int:
    """Hash a tuple of primitive values to an unsigned 64-bit integer.

    The hash is a keyed BLAKE2b digest with a fixed seed, so it is identical
    across runs, processes and machines.

    Args:
        *parts: Integers, strings, floats, booleans or ``None``

    Returns:
        An integer in ``[0, 2**64)``

    Example:
        >>> stable_hash64("C", 0, False) == stable_hash64("C", 0, False)
        True
    """
    digest = hashlib.blake2b(digest_size=8, key=HASH_SEED)
    for part in parts:
        digest.update(_encode(part))
    return int(struct.unpack("<Q", digest.digest())[0])


def lines_digest(lines: Iterable[str]) -> str:
    """Return the SHA-256 hex digest of a sequence of text lines.

    Args:
        lines: Lines of a dataset file, without trailing newlines

    Returns:
        Hex digest string
    """
    digest = hashlib.sha256()
    for line in lines:
        digest.update(line.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


def _encode(part: HashPart) -> bytes:
    # type tag + length prefix keeps ("ab", "c") and ("a", "bc") apart
    if part is None:
        return b"N"
    if isinstance(part, bool):
        return b"B1" if part else b"B0"
    if isinstance(part, int):
        text = str(part).encode()
        return b"I" + struct.pack("<I", len(text)) + text
    if isinstance(part, float):
        return b"F" + struct.pack("<d", part)
    text = part.encode("utf-8")
    return b"S" + struct.pack("<I", len(text)) + text
