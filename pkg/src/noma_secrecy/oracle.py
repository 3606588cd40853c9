"""Brute-force certification of the closed-form allocation.

Two independent routes bound the optimum from below and from inside:
a stars-and-bars grid enumerates every composition of the power budget
at a fixed resolution, and a rejection-free sampler draws random
feasible allocations. The closed form must match the best feasible grid
point up to the grid's discretization error and dominate every sample.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .allocator import InfeasiblePowerError, min_power
from .types import ChannelRealization, PowerAllocation, SystemConfig

# Grid size is C(steps + M - 1, M - 1); enumeration stays exact but is
# capped so a typo cannot ask for gigabytes.
MAX_GRID_USERS = 4
GRID_RESOLUTIONS = (1e-2, 1e-3)
MAX_GRID_POINTS = 2_000_000
# Roundoff guard when filtering grid rates against the floors.
_FEAS_EPS = 1e-12


@dataclass(frozen=True)
class GridSearchResult:
    """Outcome of one exhaustive grid search.

    ``best_alloc``/``best_ssr`` are ``None`` when no grid point meets
    the rate floors.
    """

    best_alloc: PowerAllocation | None
    best_ssr: float | None
    n_feasible: int
    n_points: int


def simplex_grid(num_users: int, steps: int) -> np.ndarray:
    """All compositions of ``steps`` into ``num_users`` non-negative parts.

    Returns an integer array of shape (C(steps+num_users-1, num_users-1),
    num_users) whose rows sum to ``steps`` exactly.
    """
    if num_users < 1 or steps < 1:
        raise ValueError("need at least one user and one step")
    if num_users == 1:
        return np.array([[steps]], dtype=np.int64)
    # Stars and bars: each (num_users - 1)-subset of slot indices marks
    # the bars; gaps between bars are the part sizes.
    bars = np.fromiter(
        itertools.chain.from_iterable(
            itertools.combinations(range(steps + num_users - 1), num_users - 1)
        ),
        dtype=np.int64,
    ).reshape(-1, num_users - 1)
    first = bars[:, :1]
    middle = np.diff(bars, axis=1) - 1
    last = steps + num_users - 2 - bars[:, -1:]
    return np.hstack([first, middle, last])


def _batch_rates(
    fractions: np.ndarray, gains, total_power: float, noise_power: float
) -> np.ndarray:
    """Decode rates for many allocations at once; one gain per column or a scalar."""
    received = total_power * np.asarray(gains, dtype=np.float64)
    # Exclusive fraction tails: undecoded interference shares Sum_{i>m}.
    tails = np.flip(np.cumsum(np.flip(fractions, axis=1), axis=1), axis=1) - fractions
    return np.log2(1.0 + received * fractions / (received * tails + noise_power))


def grid_search_ssr(
    channel: ChannelRealization,
    config: SystemConfig,
    resolution: float,
    budget: float = 1.0,
) -> GridSearchResult:
    """Best secrecy sum rate over the power-fraction grid of a given pitch.

    ``budget`` rescales the simplex so dominance of the full-budget face
    can be checked directly; fractions sum to ``budget`` in every row.
    """
    if channel.num_users != config.num_users:
        raise ValueError(
            f"channel has {channel.num_users} users, config {config.num_users}"
        )
    if channel.num_users > MAX_GRID_USERS:
        raise ValueError(
            f"grid enumeration supports at most {MAX_GRID_USERS} users, "
            f"got {channel.num_users}"
        )
    if resolution not in GRID_RESOLUTIONS:
        raise ValueError(f"resolution must be one of {GRID_RESOLUTIONS}, got {resolution!r}")
    if not 0.0 < budget <= 1.0 + 1e-12:
        raise ValueError(f"budget {budget!r} outside (0, 1]")
    steps = round(1.0 / resolution)
    n_points = math.comb(steps + channel.num_users - 1, channel.num_users - 1)
    if n_points > MAX_GRID_POINTS:
        raise ValueError(
            f"grid would hold {n_points} points, above the cap of {MAX_GRID_POINTS}"
        )
    fractions = simplex_grid(channel.num_users, steps).astype(np.float64) * (budget / steps)
    user_rates = _batch_rates(
        fractions, channel.user_gains, config.total_power, config.noise_power
    )
    floors = np.asarray(config.qos, dtype=np.float64)
    feasible = np.all(user_rates >= floors - _FEAS_EPS, axis=1)
    n_feasible = int(np.count_nonzero(feasible))
    if n_feasible == 0:
        return GridSearchResult(None, None, 0, n_points)
    eve_rates = _batch_rates(
        fractions, channel.eve_gain, config.total_power, config.noise_power
    )
    ssr = np.maximum(user_rates - eve_rates, 0.0).sum(axis=1)
    candidates = np.flatnonzero(feasible)
    best = candidates[np.argmax(ssr[candidates])]
    best_alloc = PowerAllocation(tuple(float(c) for c in fractions[best]))
    return GridSearchResult(best_alloc, float(ssr[best]), n_feasible, n_points)


def _alloc_with_surplus(gains, qos, total_power, noise_power, surplus):
    """Strongest-to-weakest pass granting each floor its requirement plus slack."""
    num_users = len(gains)
    coefficients = np.empty(num_users)
    tail = 0.0
    for m in range(num_users - 1, -1, -1):
        received = total_power * gains[m]
        need = (2.0 ** qos[m] - 1.0) * (received * tail + noise_power) / received
        coefficients[m] = need + surplus[m]
        tail += coefficients[m]
    return coefficients, tail


def sample_feasible(
    channel: ChannelRealization,
    config: SystemConfig,
    n_samples: int,
    seed: int | tuple[int, ...],
) -> list[PowerAllocation]:
    """Draw random allocations meeting every rate floor within the budget.

    The floor requirement at each position is affine in any extra power
    granted below, so a random surplus direction can be scaled exactly
    onto a uniformly drawn total in [minimum, budget]; no rejection.
    ``seed`` is anything the generator accepts, an int or a tuple key.
    """
    if n_samples < 0:
        raise ValueError(f"sample count must be non-negative, got {n_samples}")
    feasibility = min_power(channel.user_gains, config.qos, config.noise_power)
    if not feasibility.feasible_at(config.total_power):
        raise InfeasiblePowerError(config.total_power, feasibility.p_min)
    gains = channel.user_gains
    qos = config.qos
    rng = np.random.default_rng(seed)
    zero = np.zeros(channel.num_users)
    _, base_total = _alloc_with_surplus(
        gains, qos, config.total_power, config.noise_power, zero
    )
    # The zero-surplus pass is the minimum-power split scaled into
    # fraction space, so feasibility puts it inside the budget.
    spare = max(0.0, 1.0 - base_total)
    samples = []
    for _ in range(n_samples):
        direction = -np.log1p(-rng.random(channel.num_users))
        _, pushed_total = _alloc_with_surplus(
            gains, qos, config.total_power, config.noise_power, direction
        )
        slope = pushed_total - base_total
        target = rng.random() * spare
        scale = 0.0 if slope <= 0.0 else target / slope
        coefficients, _ = _alloc_with_surplus(
            gains, qos, config.total_power, config.noise_power, scale * direction
        )
        samples.append(PowerAllocation(tuple(float(c) for c in coefficients)))
    return samples
