"""Seeded Rayleigh-fading channel generation.

Channel power gains are distance-weighted unit-mean exponentials,
``|h|^2 = d**-alpha * e`` with ``e ~ Exp(1)``. Exponentials are drawn by
inverting the CDF on top of the generator's uniforms, so a draw depends
only on ``(seed, trial_index)`` and not on how many trials any one
process runs.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .types import ChannelRealization, SystemConfig

# Largest double below 1: keeps 1 - u away from 0 so the log stays finite
# and every gain strictly positive.
_MAX_UNIFORM = 1.0 - 2.0**-53


@dataclass(frozen=True)
class ChannelSamplerSpec:
    """Addresses one reproducible draw inside a seeded experiment."""

    seed: int
    trial_index: int

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed {self.seed!r} outside 0..2**64-1")
        if not 0 <= self.trial_index < 2**64:
            raise ValueError(f"trial index {self.trial_index!r} outside 0..2**64-1")


def locate_eve(user_gains: tuple[float, ...], eve_gain: float) -> int:
    """Number of sorted user gains that do not exceed the eavesdropper's.

    ``user_gains`` must be non-decreasing; binary search keeps this
    O(log M).
    """
    if any(a > b for a, b in zip(user_gains, user_gains[1:])):
        raise ValueError("user gains must be sorted in non-decreasing order")
    return bisect_right(user_gains, eve_gain)


def sample_channel(spec: ChannelSamplerSpec, config: SystemConfig) -> ChannelRealization:
    """Draw one realization: sorted user gains, eavesdropper gain, its rank.

    The generator is keyed by ``(seed, trial_index)``, so trial t of a
    run is identical no matter how trials are batched across threads.
    """
    rng = np.random.default_rng((spec.seed, spec.trial_index))
    uniforms = rng.random(config.num_users + 1)
    exponentials = -np.log(1.0 - np.minimum(uniforms, _MAX_UNIFORM))
    distances = np.asarray(config.user_distances)
    user = np.sort(distances**-config.path_loss_exponent * exponentials[:-1])
    eve = float(config.eve_distance**-config.path_loss_exponent * exponentials[-1])
    gains = tuple(float(g) for g in user)
    return ChannelRealization(user_gains=gains, eve_gain=eve, eve_rank=locate_eve(gains, eve))
