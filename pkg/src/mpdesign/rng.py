"""Reproducible random streams built on a counter-based generator.

Every stochastic routine in the package takes an explicit :class:`RandomStream`.
A stream is identified by a 64-bit seed plus a tuple of integer labels; the
same (seed, label) always reproduces the same variate sequence, and distinct
labels give statistically independent substreams (Philox counter-based
generator keyed through ``SeedSequence`` spawn keys). Streams are immutable
values, so they can be shared across threads freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["RandomStream"]


@dataclass(frozen=True)
class RandomStream:
    """Seed plus substream label identifying a reproducible variate sequence."""

    seed: int
    label: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if isinstance(self.label, int):
            object.__setattr__(self, "label", (self.label,))
        else:
            object.__setattr__(self, "label", tuple(int(x) for x in self.label))

    def child(self, *label: int) -> "RandomStream":
        """Substream with additional label components appended."""
        return RandomStream(self.seed, self.label + tuple(int(x) for x in label))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=self.label)
        return np.random.Generator(np.random.Philox(ss))
