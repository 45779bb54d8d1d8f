"""Counter-based random streams for order-independent Monte Carlo.

Trial ``t`` of a run owns the uniforms at positions ``[t*w, (t+1)*w)`` of a
Philox stream keyed by ``(master_seed, tag)``, where ``w`` is the number of
draws a trial consumes.  Philox is a counter-based generator, so any block
of trials can be produced directly from its start position; results do not
depend on how trials are split across workers.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.random import Philox

__all__ = ["MASK64", "raw_to_uniform", "trial_uniforms", "RngStream"]

MASK64 = (1 << 64) - 1
_WORDS_PER_COUNTER = 4  # Philox4x64 emits four 64-bit words per counter value


def _key(master_seed: int, tag: int) -> int:
    if not 0 <= master_seed <= MASK64:
        raise ValueError(f"master_seed must be an unsigned 64-bit integer, got {master_seed}")
    return master_seed | (int(tag) << 64)


def raw_to_uniform(raw: np.ndarray) -> np.ndarray:
    """Map 64-bit words to doubles on (0, 1] using the top 53 bits."""
    return ((raw >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * 2.0 ** -53


def _raw_at(master_seed: int, tag: int, position: int, count: int) -> np.ndarray:
    bitgen = Philox(key=_key(master_seed, tag), counter=position // _WORDS_PER_COUNTER)
    skip = position % _WORDS_PER_COUNTER
    if skip:
        bitgen.random_raw(skip)
    return bitgen.random_raw(count)


def trial_uniforms(master_seed: int, tag: int, start: int, stop: int, width: int) -> np.ndarray:
    """Uniforms for trials ``start..stop-1`` as a ``(stop-start, width)`` array."""
    if not 0 <= start <= stop:
        raise ValueError("need 0 <= start <= stop")
    if width < 1:
        raise ValueError("width must be >= 1")
    raw = _raw_at(master_seed, tag, start * width, (stop - start) * width)
    return raw_to_uniform(raw).reshape(stop - start, width)


@dataclass
class RngStream:
    """Sequential view of one trial's uniforms.

    ``width`` is the trial's draw budget; asking for more raises.
    """

    master_seed: int
    stream_id: int
    width: int
    tag: int = 0
    _used: int = field(default=0, repr=False)

    def uniform(self, size: int | None = None):
        count = 1 if size is None else int(size)
        if self._used + count > self.width:
            raise IndexError(f"stream {self.stream_id} exhausted ({self.width} draws)")
        pos = self.stream_id * self.width + self._used
        self._used += count
        u = raw_to_uniform(_raw_at(self.master_seed, self.tag, pos, count))
        return float(u[0]) if size is None else u
