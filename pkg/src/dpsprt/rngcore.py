"""Deterministic splittable random streams on a counter-based generator.

Every stochastic component of the library draws from a stream addressed by a
:class:`StreamKey`. Keys mix (master seed, variant, trial, substream role)
into a 128-bit Philox key, so distinct keys give independent streams and the
same key always replays the same stream, with no coordination between
parallel consumers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

__all__ = ["Substream", "StreamKey", "derive", "mix64", "uniform_open"]

_MASK64 = (1 << 64) - 1


class Substream(IntEnum):
    """Role of a stream within one trial."""

    OBS = 1
    NOISE_Y = 2
    NOISE_Z = 3
    SUBSAMPLE = 4
    PILOT = 5


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit avalanche mix."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class StreamKey:
    """Address of one random stream."""

    master_seed: int
    variant_id: int = 0
    trial: int = 0
    substream: Substream = Substream.OBS

    def words(self) -> tuple[int, int]:
        """Collision-resistant 128-bit key derived from the fields."""
        h = mix64(self.master_seed & _MASK64)
        h = mix64(h ^ mix64(self.variant_id & _MASK64))
        h = mix64(h ^ mix64(self.trial & _MASK64))
        h = mix64(h ^ mix64(int(self.substream)))
        return h, mix64(h ^ 0xD1B54A32D192ED03)


def derive(key: StreamKey) -> np.random.Generator:
    """Generator for `key`; same key yields the identical stream forever.

    Philox has an integer-only, platform-independent state transition, so
    derived streams are reproducible across architectures.
    """
    w0, w1 = key.words()
    bitgen = np.random.Philox(key=np.array([w0, w1], dtype=np.uint64))
    return np.random.Generator(bitgen)


def uniform_open(rng: np.random.Generator, size=None):
    """Uniform draws on the open interval (0, 1) at 2^-53 resolution.

    Returns midpoints of dyadic cells, so inverse-CDF transforms never see
    an endpoint and stay finite.
    """
    k = rng.integers(0, 1 << 53, size=size, dtype=np.int64)
    return (k + 0.5) * (2.0**-53)
