"""Deterministic seed derivation.

Every randomized operation takes a single integer seed.  Sub-seeds (per
trial, per phase) are derived with :func:`mix`, a splitmix64 step, so that
identical command lines reproduce byte-identical output while distinct
trials get statistically independent streams.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def mix(seed: int, salt: int) -> int:
    """Derive a sub-seed from ``seed`` and ``salt`` (splitmix64 finalizer).

    mix(s, i) = finalize(s + (i + 1) * 0x9E3779B97F4A7C15) where
    finalize(z) xors z with shifted copies of itself multiplied by the
    splitmix64 constants.  The result is a 63-bit non-negative integer.
    """
    z = (seed + (salt + 1) * 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z = z ^ (z >> 31)
    return z >> 1
