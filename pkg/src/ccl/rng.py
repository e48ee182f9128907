"""Reproducible substream handles built on a counter-based generator.

A :class:`RngStream` is a value object ``(seed, stream_index)``; calling
:meth:`RngStream.generator` always yields a generator producing the same
draw sequence for the same pair, and distinct ``stream_index`` values give
statistically independent streams. Batch ``k`` of a Monte Carlo run uses
stream ``k`` so merged results never depend on scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class RngStream:
    """Key of one reproducible random substream."""

    seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        """Create a fresh generator positioned at the start of this stream."""
        key = np.array(
            [self.seed & _MASK64, self.stream_index & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, offset: int) -> "RngStream":
        """Stream with the same seed and a shifted stream index."""
        return RngStream(self.seed, self.stream_index + offset)
