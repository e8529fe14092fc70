"""Deterministic random substreams.

Every consumer of randomness derives its own generator from
``(seed, tag, *index)`` so that results never depend on call order or on
how work is split across workers.
"""
import hashlib
import struct
import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def tag_id(tag):
    return zlib.crc32(tag.encode("utf-8"))


def substream(seed, tag, *index):
    """Return an independent ``numpy.random.Generator`` for ``(seed, tag, index...)``."""
    key = (tag_id(tag),) + tuple(int(i) for i in index)
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=key)
    return np.random.default_rng(ss)


def coord_key(*values):
    """Stable 64-bit key for a tuple of floats (used to name links by geometry)."""
    raw = struct.pack(f"<{len(values)}d", *(float(v) for v in values))
    return int.from_bytes(hashlib.blake2b(raw, digest_size=8).digest(), "little")
