"""Seeded random instance generation.

Choices are drawn uniformly with replacement (multiset model) from the
choice stream of the instance seed, in fixed-size chunks so that the
streaming iterator and the batch matrix see byte-identical draws.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .core import Item
from .streams import CHOICES_STREAM, stream_rng

_CHUNK = 1 << 16


@dataclass
class InstanceSpec:
    """One random experiment: n locations, k choices per item, m items
    (or density c with m = floor(c * n)), capacity s, 64-bit seed."""

    n: int
    k: int
    m: int | None = None
    c: float | None = None
    s: int = 1
    seed: int = 0
    distinct: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if (self.m is None) == (self.c is None):
            raise ValueError("give exactly one of m or c")
        if self.m is None:
            self.m = math.floor(self.c * self.n)
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.distinct and self.k > self.n:
            raise ValueError(f"distinct choices need k <= n, got k={self.k}, n={self.n}")

    @property
    def density(self) -> float:
        return self.c if self.c is not None else self.m / self.n


def _choice_chunks(spec: InstanceSpec) -> Iterator[np.ndarray]:
    rng = stream_rng(spec.seed, CHOICES_STREAM)
    remaining = spec.m
    while remaining > 0:
        size = min(_CHUNK, remaining)
        mat = rng.integers(0, spec.n, size=(size, spec.k), dtype=np.int64)
        if spec.distinct:
            # Rejection resampling: redraw rows containing duplicates.
            while True:
                srt = np.sort(mat, axis=1)
                bad = (srt[:, 1:] == srt[:, :-1]).any(axis=1)
                if not bad.any():
                    break
                mat[bad] = rng.integers(0, spec.n, size=(int(bad.sum()), spec.k), dtype=np.int64)
        yield mat
        remaining -= size


def choices_matrix(spec: InstanceSpec) -> np.ndarray:
    """All choices as an (m, k) int64 matrix; row i belongs to item i."""
    chunks = list(_choice_chunks(spec))
    if not chunks:
        return np.empty((0, spec.k), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


def gen_instance(spec: InstanceSpec) -> Iterator[Item]:
    """Items in arrival order; deterministic given the spec."""
    next_id = 0
    for mat in _choice_chunks(spec):
        for row in mat.tolist():
            yield Item(next_id, row)
            next_id += 1
