"""Deterministic sub-seed derivation.

All randomness in the pipeline funnels through a single global seed; every
component derives its own seed from a stable hash of (seed, label path), so
adding or reordering work never perturbs unrelated draws.
"""

import hashlib


def derive_seed(*parts) -> int:
    """Return a 64-bit seed derived from a stable hash of the given parts."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
