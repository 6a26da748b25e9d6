"""Keyed random sub-streams.

Every random quantity is drawn from a generator keyed by ``(seed, tag, *ints)``
so results never depend on the order in which independent pieces are sampled.
"""

from __future__ import annotations

import zlib

import numpy as np


def _tag_id(tag: str) -> int:
    return zlib.crc32(tag.encode("utf-8"))


def substream(seed: int, tag: str, *keys: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(_tag_id(tag), *(int(k) for k in keys)))
    return np.random.Generator(np.random.PCG64(ss))
