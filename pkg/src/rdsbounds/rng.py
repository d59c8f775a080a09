"""Seed handling: one root seed, deterministic child streams."""

from __future__ import annotations

import numpy as np


def as_rng(seed=None) -> np.random.Generator:
    """Coerce ``None``, an int seed, a SeedSequence, or a Generator into a
    Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed, count: int) -> list[np.random.Generator]:
    """Deterministically derive ``count`` independent generators from one
    root seed."""
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in root.spawn(count)]
