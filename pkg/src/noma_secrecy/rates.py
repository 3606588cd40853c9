"""Rate engine for the superposition downlink with successive cancellation.

Receivers decode the weakest users' signals first and subtract them, so
when the m-th position is decoded only the fractions allocated to
stronger users remain as interference:

    rate = log2(1 + P g c_m / (P g t_m + noise)),  t_m = sum(c_i for i > m)

where g is the decoding receiver's channel power gain and c are the
power fractions. The same expression covers the legitimate user (g is
its own gain) and the eavesdropper (g is the eavesdropper's gain), since
both observe the same superposed signal.
"""

from __future__ import annotations

import math

from .types import ChannelRealization, PowerAllocation, RateReport, SystemConfig


def decode_rate(
    gain: float,
    coefficients: tuple[float, ...],
    m: int,
    total_power: float,
    noise_power: float,
) -> float:
    """Rate (bits/s/Hz) at decoding position m (1-based) through channel gain ``gain``.

    Positions below m are assumed cancelled; positions above m interfere.
    """
    if not 1 <= m <= len(coefficients):
        raise IndexError(f"decoding position {m} outside 1..{len(coefficients)}")
    received = total_power * gain
    tail = math.fsum(coefficients[m:])
    return math.log2(1.0 + received * coefficients[m - 1] / (received * tail + noise_power))


def _check_shapes(alloc: PowerAllocation, channel: ChannelRealization, config: SystemConfig):
    if not (alloc.num_users == channel.num_users == config.num_users):
        raise ValueError(
            f"user count mismatch: allocation {alloc.num_users}, "
            f"channel {channel.num_users}, config {config.num_users}"
        )


def user_rate(
    m: int, alloc: PowerAllocation, channel: ChannelRealization, config: SystemConfig
) -> float:
    """Achievable rate of the m-th weakest user under successive cancellation."""
    _check_shapes(alloc, channel, config)
    if not 1 <= m <= config.num_users:
        raise IndexError(f"user index {m} outside 1..{config.num_users}")
    return decode_rate(
        channel.user_gains[m - 1], alloc.coefficients, m, config.total_power, config.noise_power
    )


def eve_rate(
    m: int, alloc: PowerAllocation, channel: ChannelRealization, config: SystemConfig
) -> float:
    """Rate at which the eavesdropper can decode the m-th user's signal.

    The eavesdropper is assumed to run the same cancellation order as
    the legitimate receivers, so only its channel gain differs.
    """
    _check_shapes(alloc, channel, config)
    if not 1 <= m <= config.num_users:
        raise IndexError(f"user index {m} outside 1..{config.num_users}")
    return decode_rate(
        channel.eve_gain, alloc.coefficients, m, config.total_power, config.noise_power
    )


def secrecy_sum_rate(
    alloc: PowerAllocation, channel: ChannelRealization, config: SystemConfig
) -> RateReport:
    """Per-user rates and the clamped secrecy sum rate for one realization.

    Each user's secrecy rate is ``max(0, user_rate - eve_rate)``; users
    whose gain does not exceed the eavesdropper's contribute zero.
    """
    _check_shapes(alloc, channel, config)
    users = []
    eves = []
    secrecy = []
    for m in range(1, config.num_users + 1):
        rb = user_rate(m, alloc, channel, config)
        re = eve_rate(m, alloc, channel, config)
        users.append(rb)
        eves.append(re)
        secrecy.append(max(0.0, rb - re))
    return RateReport(
        user_rates=tuple(users),
        eve_rates=tuple(eves),
        secrecy_rates=tuple(secrecy),
        ssr=math.fsum(secrecy),
        degenerate=channel.has_tied_gains,
    )


def tail_rate_gap(
    m: int, tail_fraction: float, channel: ChannelRealization, config: SystemConfig
) -> float:
    """One telescoped term of the reduced secrecy sum rate.

    For ``t`` the fraction of power allocated above position m,

        gap = log2(upper * t + noise) - log2(lower * t + noise)

    where ``upper`` is the received power of user m+1's channel and
    ``lower`` is the eavesdropper's received power at the boundary
    position ``m == eve_rank`` and user m's received power otherwise.
    The gap is non-decreasing in ``t`` whenever ``upper >= lower``,
    which the sorted gain order guarantees for ``m >= eve_rank``.
    """
    if not channel.eve_rank <= m <= channel.num_users - 1:
        raise IndexError(
            f"position {m} outside {channel.eve_rank}..{channel.num_users - 1}"
        )
    if not -1e-12 <= tail_fraction <= 1.0 + 1e-9:
        raise ValueError(f"tail fraction {tail_fraction!r} outside [0, 1]")
    tail_fraction = min(max(tail_fraction, 0.0), 1.0)
    upper = config.total_power * channel.user_gains[m]
    if m == channel.eve_rank:
        lower = config.total_power * channel.eve_gain
    else:
        lower = config.total_power * channel.user_gains[m - 1]
    noise = config.noise_power
    return math.log2(upper * tail_fraction + noise) - math.log2(lower * tail_fraction + noise)


def secrecy_sum_rate_reduced(
    alloc: PowerAllocation, channel: ChannelRealization, config: SystemConfig
) -> float:
    """Secrecy sum rate via the telescoped form over positions eve_rank..M-1.

    Valid whenever every user meets its rate floor (so no per-user clamp
    is active above ``eve_rank``); agrees with the clamped sum from
    :func:`secrecy_sum_rate` on such allocations. Can be negative for
    allocations that starve users above ``eve_rank``, where the clamped
    form would floor them at zero instead.
    """
    _check_shapes(alloc, channel, config)
    terms = []
    tail = 0.0
    # Walk strongest-to-weakest so each position's tail is one running sum.
    for m in range(channel.num_users - 1, channel.eve_rank - 1, -1):
        tail += alloc.coefficients[m]
        terms.append(tail_rate_gap(m, min(tail, 1.0), channel, config))
    return math.fsum(terms)
