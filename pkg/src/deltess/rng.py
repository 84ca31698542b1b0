"""Counter-based splittable random streams.

Every stochastic operation takes an explicit stream keyed by (master seed,
replicate index, purpose tag).  Distinct keys give independent reproducible
streams, so replicates can run in any order on any number of workers and
still produce bit-identical results.  Keys are hashed with SHA-256 into a
Philox counter-based generator, which keeps the derivation platform-stable.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_U64 = float(1 << 64)


def _digest(parts: tuple) -> bytes:
    msg = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return hashlib.sha256(msg).digest()


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream identified by (seed, replicate, purpose)."""

    seed: int
    replicate: int = 0
    purpose: str = ""

    def child(self, purpose: str, replicate: int | None = None) -> "RngStream":
        """Derive a sub-stream; the child key extends the parent's purpose."""
        tag = f"{self.purpose}/{purpose}" if self.purpose else purpose
        rep = self.replicate if replicate is None else replicate
        return RngStream(self.seed, rep, tag)

    def generator(self) -> np.random.Generator:
        """A fresh numpy Generator positioned at the start of this stream."""
        d = _digest((self.seed, self.replicate, self.purpose))
        key = np.frombuffer(d[:16], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def uniform_for(self, *parts) -> float:
        """One uniform in [0, 1) keyed by extra identifiers (e.g. an edge).

        Used where per-item replay stability matters: the same
        (stream, parts) always yields the same value, independent of any
        other draws.
        """
        d = _digest((self.seed, self.replicate, self.purpose) + parts)
        return int.from_bytes(d[:8], "little") / _U64

    def uniform_pair_for(self, *parts) -> tuple[float, float]:
        """Two independent uniforms keyed by extra identifiers."""
        d = _digest((self.seed, self.replicate, self.purpose) + parts)
        return (
            int.from_bytes(d[:8], "little") / _U64,
            int.from_bytes(d[8:16], "little") / _U64,
        )
