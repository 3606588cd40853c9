"""Shared value types: system parameters, channel draws, allocations, rate reports.

All powers are linear watts and all rates are bits/s/Hz. Decibel units
appear only at the CLI boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Slack allowed on the power-fraction budget when validating an allocation.
SIMPLEX_TOL = 1e-9


def dbm_to_watts(dbm: float) -> float:
    """Convert a dBm level to linear watts."""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    """Convert linear watts to dBm. Requires a strictly positive input."""
    if watts <= 0.0:
        raise ValueError(f"dBm undefined for non-positive power {watts!r}")
    return 10.0 * math.log10(watts) + 30.0


def _as_float_tuple(values) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class SystemConfig:
    """Static downlink parameters.

    Users are indexed by their position in the sorted channel order,
    weakest first, so ``qos[m - 1]`` is the rate floor (bits/s/Hz) of
    whichever user ends up m-th weakest in a given realization.

    ``user_distances`` defaults to 80 m for every user, matching
    ``eve_distance``, so that channel ordering is driven purely by
    fading.
    """

    num_users: int
    total_power: float
    noise_power: float
    qos: tuple[float, ...]
    path_loss_exponent: float = 3.0
    user_distances: tuple[float, ...] | None = None
    eve_distance: float = 80.0

    def __post_init__(self):
        if self.num_users < 1:
            raise ValueError("need at least one user")
        if not self.total_power > 0.0:
            raise ValueError(f"total power must be positive, got {self.total_power!r}")
        if not self.noise_power > 0.0:
            raise ValueError(f"noise power must be positive, got {self.noise_power!r}")
        object.__setattr__(self, "qos", _as_float_tuple(self.qos))
        if len(self.qos) != self.num_users:
            raise ValueError(f"expected {self.num_users} rate floors, got {len(self.qos)}")
        if any(q < 0.0 or not math.isfinite(q) for q in self.qos):
            raise ValueError("rate floors must be finite and non-negative")
        if not self.path_loss_exponent > 0.0:
            raise ValueError("path loss exponent must be positive")
        distances = self.user_distances
        if distances is None:
            distances = (80.0,) * self.num_users
        object.__setattr__(self, "user_distances", _as_float_tuple(distances))
        if len(self.user_distances) != self.num_users:
            raise ValueError(
                f"expected {self.num_users} user distances, got {len(self.user_distances)}"
            )
        if any(not d > 0.0 for d in self.user_distances):
            raise ValueError("user distances must be positive")
        if not self.eve_distance > 0.0:
            raise ValueError("eavesdropper distance must be positive")


@dataclass(frozen=True)
class ChannelRealization:
    """One fading draw: sorted user channel power gains plus the eavesdropper's.

    ``user_gains`` must be non-decreasing; user m (1-based) is the m-th
    weakest. ``eve_rank`` is the number of users whose gain does not
    exceed the eavesdropper's, i.e. the index below which no user can
    attain a positive secrecy rate.
    """

    user_gains: tuple[float, ...]
    eve_gain: float
    eve_rank: int

    def __post_init__(self):
        object.__setattr__(self, "user_gains", _as_float_tuple(self.user_gains))
        if not self.user_gains:
            raise ValueError("need at least one user gain")
        if any(not g > 0.0 for g in self.user_gains):
            raise ValueError("user gains must be positive")
        if any(a > b for a, b in zip(self.user_gains, self.user_gains[1:])):
            raise ValueError("user gains must be sorted in non-decreasing order")
        if not self.eve_gain > 0.0:
            raise ValueError(f"eavesdropper gain must be positive, got {self.eve_gain!r}")
        expected = sum(1 for g in self.user_gains if g <= self.eve_gain)
        if self.eve_rank != expected:
            raise ValueError(
                f"eve_rank {self.eve_rank} inconsistent with gains (expected {expected})"
            )

    @property
    def num_users(self) -> int:
        return len(self.user_gains)

    @property
    def has_tied_gains(self) -> bool:
        """True when two user gains coincide or the eavesdropper ties one."""
        adjacent = zip(self.user_gains, self.user_gains[1:])
        return any(a == b for a, b in adjacent) or self.eve_gain in self.user_gains


@dataclass(frozen=True)
class PowerAllocation:
    """Per-user fractions of the total transmit power, weakest user first.

    Fractions are non-negative and sum to at most 1 (within
    ``SIMPLEX_TOL``); a strict deficit means part of the budget is
    deliberately unspent.
    """

    coefficients: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _as_float_tuple(self.coefficients))
        if not self.coefficients:
            raise ValueError("need at least one coefficient")
        if any(not math.isfinite(c) or c < 0.0 for c in self.coefficients):
            raise ValueError("power fractions must be finite and non-negative")
        total = math.fsum(self.coefficients)
        if total > 1.0 + SIMPLEX_TOL:
            raise ValueError(f"power fractions sum to {total!r}, exceeding the budget")

    @property
    def num_users(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class RateReport:
    """Per-user decode rates, eavesdropper rates, and the secrecy sum rate.

    ``secrecy_rates[m - 1]`` is ``max(0, user_rates[m-1] - eve_rates[m-1])``
    and ``ssr`` is their sum. ``degenerate`` flags realizations with tied
    gains, where the decoding order is ambiguous.
    """

    user_rates: tuple[float, ...]
    eve_rates: tuple[float, ...]
    secrecy_rates: tuple[float, ...]
    ssr: float
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "user_rates", _as_float_tuple(self.user_rates))
        object.__setattr__(self, "eve_rates", _as_float_tuple(self.eve_rates))
        object.__setattr__(self, "secrecy_rates", _as_float_tuple(self.secrecy_rates))
        lengths = {len(self.user_rates), len(self.eve_rates), len(self.secrecy_rates)}
        if lengths == {0} or len(lengths) != 1:
            raise ValueError("rate vectors must be non-empty and of equal length")
        all_rates = self.user_rates + self.eve_rates + self.secrecy_rates + (self.ssr,)
        if any(not math.isfinite(r) or r < 0.0 for r in all_rates):
            raise ValueError("rates must be finite and non-negative")
