"""Seed plumbing: every RNG in the package is a numpy PCG64 stream.

Derived streams use flat tuples of ints as SeedSequence entropy, so any
(seed, context...) combination yields a reproducible, platform-stable
generator.
"""

from __future__ import annotations

import numpy as np


def entropy(seed, *extra: int) -> tuple[int, ...]:
    """Flatten a seed (int or tuple) plus context ints into entropy."""
    if isinstance(seed, (tuple, list)):
        base = tuple(int(s) for s in seed)
    else:
        base = (int(seed),)
    return base + tuple(int(e) for e in extra)


def stream(seed, *extra: int) -> np.random.Generator:
    """A PCG64 generator for the given seed and context."""
    return np.random.default_rng(entropy(seed, *extra))
