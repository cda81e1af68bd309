"""Counter-based random streams for reproducible parallel sampling.

A stream is the pure function of (seed, stream_id) realized by a Philox
counter-based generator keyed with exactly that pair, so distinct stream
ids give statistically independent sequences and the same pair always
replays the same draws, regardless of how work is scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """Immutable handle on a (seed, stream_id) random sequence."""

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name, value in (("seed", self.seed), ("stream_id", self.stream_id)):
            if not 0 <= value <= MASK64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=[self.seed, self.stream_id]))

    def substream(self, stream_id: int) -> "RngStream":
        return RngStream(self.seed, stream_id)
