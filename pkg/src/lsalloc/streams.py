"""Seed policy for all randomness in the package.

Every random draw comes from numpy's PCG64 bit generator.  A user-facing
64-bit seed is expanded into independent per-purpose streams via
``SeedSequence(seed, spawn_key=(stream,))``; the constants below are the
documented splitting rule.  Identical (seed, stream) pairs yield identical
draw sequences on any platform.
"""

from __future__ import annotations

import numpy as np

CHOICES_STREAM = 0  # item choice generation
WALK_STREAM = 1     # random-walk location picks
VICTIM_STREAM = 2   # eviction-victim picks for capacity > 1 tables


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Build the generator for one purpose-specific stream of ``seed``."""
    seq = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(seq))
