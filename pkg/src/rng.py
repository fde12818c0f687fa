"""Seeded random streams shared by the choice modules and navigation policies."""

import zlib

import numpy as np

MAX_SEED = 2**64 - 1

_DOUBLE_SCALE = 2.0 ** -53


class RngStream:
    """
    A reproducible stream of draws for one attribute.

    The bit source is numpy's PCG64 seeded through a SeedSequence whose spawn
    key is the CRC-32 of ``key``, so every attribute gets its own stream from
    one run seed. Both are fixed algorithms; draws are mapped from the raw
    64-bit outputs here rather than through ``Generator`` methods, whose
    mapping may change between numpy releases.
    """

    def __init__(self, seed: int, key: str = ""):
        """
        Args:
            seed: 64-bit unsigned run seed
            key: Stream name, usually the attribute id
        """
        if not 0 <= seed <= MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.key = key
        self.position = 0
        sequence = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(key.encode("utf-8")),))
        self._bits = np.random.PCG64(sequence)

    def _next_raw(self) -> int:
        self.position += 1
        return int(self._bits.random_raw())

    def uniform(self) -> float:
        """Draw one variate in [0, 1) from the top 53 bits of a raw output."""
        return (self._next_raw() >> 11) * _DOUBLE_SCALE

    def index(self, n: int) -> int:
        """Draw one integer in [0, n) by scaling a single uniform variate."""
        if n < 1:
            raise ValueError(f"cannot draw an index from {n} candidates")
        return min(int(self.uniform() * n), n - 1)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, key={self.key!r}, position={self.position})"
