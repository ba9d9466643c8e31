"""Deterministic random streams: SplitMix64 counter stream + Box-Muller.

Every random quantity in the fuzz harness is derived from a 64-bit seed
through these routines, so identical seeds reproduce identical campaigns
bit for bit (given an identical floating environment).  Instance-level
streams are derived from (seed, index) with a mixing step, which makes
sharded execution order-independent.
"""
from __future__ import annotations

import math

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def mix64(a: int, b: int = 0) -> int:
    """One scalar SplitMix64 mixing step over (a, b); used to derive child
    seeds for (seed, index) instance streams."""
    with np.errstate(over="ignore"):
        z = (np.uint64(a & 0xFFFFFFFFFFFFFFFF) + _GOLDEN * np.uint64((b + 1) & 0xFFFFFFFFFFFFFFFF)) & _MASK
        return int(_mix(np.uint64(z)))


class SplitMixStream:
    """Counter-based SplitMix64 stream producing uniforms and normals.

    The i-th raw word is mix(seed + (i+1)*GOLDEN); the stream keeps an
    offset so repeated draws continue the counter.
    """

    def __init__(self, seed: int):
        self.seed = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self._offset = 0

    def raw(self, n: int) -> np.ndarray:
        idx = np.arange(self._offset + 1, self._offset + n + 1, dtype=np.uint64)
        self._offset += n
        with np.errstate(over="ignore"):
            return _mix((self.seed + idx * _GOLDEN) & _MASK)

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles uniform in (0, 1]."""
        return ((self.raw(n) >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53

    def uniform(self, lo: float, hi: float, n: int | None = None):
        u = self.uniforms(1 if n is None else n)
        out = lo + (hi - lo) * u
        return float(out[0]) if n is None else out

    def normals(self, n: int) -> np.ndarray:
        """n standard normals via Box-Muller on consecutive uniform pairs."""
        m = (n + 1) // 2
        u = self.uniforms(2 * m)
        r = np.sqrt(-2.0 * np.log(u[:m]))
        ang = (2.0 * math.pi) * u[m:]
        z = np.empty(2 * m)
        z[0::2] = r * np.cos(ang)
        z[1::2] = r * np.sin(ang)
        return z[:n]

    def choice_index(self, k: int) -> int:
        """Deterministic index in [0, k)."""
        return int(self.raw(1)[0] % np.uint64(k))


def derive(seed: int, index: int) -> SplitMixStream:
    """Independent stream for instance `index` of campaign `seed`."""
    return SplitMixStream(mix64(seed, index))
