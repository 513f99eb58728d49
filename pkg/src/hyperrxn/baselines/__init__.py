"""reactionFP baseline: circular fingerprints and their reaction difference."""

from .fingerprint import (
    DEFAULT_BITS,
    DEFAULT_RADIUS,
    Fingerprint,
    morgan_fingerprint,
    morgan_identifiers,
    reaction_fp,
    reaction_fp_parts,
)
from .model import FingerprintBatch, FingerprintModel

__all__ = [
    "DEFAULT_BITS",
    "DEFAULT_RADIUS",
    "Fingerprint",
    "FingerprintBatch",
    "FingerprintModel",
    "morgan_fingerprint",
    "morgan_identifiers",
    "reaction_fp",
    "reaction_fp_parts",
]
