"""Shared test helpers: an exact rational rate oracle and instance makers.

``exact_rate`` recomputes a decode rate with Fraction arithmetic so the
SINR carries no rounding at all; only the final log2 rounds. Tests
compare implementation output against it instead of re-deriving
expected values by hand.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from noma_secrecy import (
    ChannelRealization,
    PowerAllocation,
    SystemConfig,
    min_power,
)


def exact_rate(gain, coefficients, m, total_power, noise_power):
    """Decode rate via exact rational SINR; independent of the library path."""
    received = Fraction(total_power) * Fraction(gain)
    tail = sum((Fraction(c) for c in coefficients[m:]), Fraction(0))
    sinr = received * Fraction(coefficients[m - 1]) / (received * tail + Fraction(noise_power))
    return math.log2(1 + sinr)


def exact_ssr(alloc, channel, config):
    """Clamped secrecy sum rate built only from exact_rate."""
    total = 0.0
    for m in range(1, channel.num_users + 1):
        rb = exact_rate(
            channel.user_gains[m - 1], alloc.coefficients, m,
            config.total_power, config.noise_power,
        )
        re = exact_rate(
            channel.eve_gain, alloc.coefficients, m,
            config.total_power, config.noise_power,
        )
        total += max(0.0, rb - re)
    return total


def random_channel(rng, num_users, scale=1.0):
    """Sorted exponential gains plus an eavesdropper draw, no library code."""
    draws = -np.log1p(-rng.random(num_users + 1))
    gains = tuple(float(g) for g in np.sort(draws[:num_users]) * scale)
    eve = float(draws[num_users] * scale)
    rank = sum(1 for g in gains if g <= eve)
    return ChannelRealization(user_gains=gains, eve_gain=eve, eve_rank=rank)


def random_feasible_config(rng, channel, q_low=0.5, q_high=2.0, span=10.0, noise=1.0):
    """Floors in [q_low, q_high] and a budget in [1, span] x the minimum."""
    qos = tuple(float(q) for q in rng.uniform(q_low, q_high, channel.num_users))
    p_min = min_power(channel.user_gains, qos, noise).p_min
    total = p_min * float(rng.uniform(1.0, span))
    return SystemConfig(
        num_users=channel.num_users, total_power=total, noise_power=noise, qos=qos
    )


def random_allocation(rng, num_users, full_budget=False):
    """Random simplex point; optionally leaves part of the budget unspent."""
    direction = -np.log1p(-rng.random(num_users))
    total = 1.0 if full_budget else float(rng.uniform(0.05, 1.0))
    coefficients = direction / direction.sum() * total
    return PowerAllocation(tuple(float(c) for c in coefficients))


# The running instance used across modules: M=2, P=3 W, unit noise,
# gains (1, 4), eavesdropper gain 2, both floors at 1 bit/s/Hz.
RUNNING_CONFIG = SystemConfig(num_users=2, total_power=3.0, noise_power=1.0, qos=(1.0, 1.0))
RUNNING_CHANNEL = ChannelRealization(user_gains=(1.0, 4.0), eve_gain=2.0, eve_rank=1)
RUNNING_ALLOC = PowerAllocation((2.0 / 3.0, 1.0 / 3.0))
