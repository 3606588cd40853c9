"""Orthogonal time-sharing benchmark."""

from __future__ import annotations

import math

from .types import ChannelRealization, SystemConfig


def oma_ssr(
    channel: ChannelRealization, config: SystemConfig, enforce_qos: bool = False
) -> float:
    """Secrecy sum rate when users take equal time slots at full power.

    Each user transmits alone in a 1/M slot with the whole budget; the
    eavesdropper listens in every slot, so user m contributes
    ``max(0, slot_rate_m - slot_rate_eve)``. With ``enforce_qos`` the
    benchmark returns 0.0 whenever some slot rate misses its floor;
    equal slots leave no knob to repair that, mirroring how an
    infeasible trial is scored.
    """
    if channel.num_users != config.num_users:
        raise ValueError(
            f"channel has {channel.num_users} users, config {config.num_users}"
        )
    share = 1.0 / config.num_users
    snr_scale = config.total_power / config.noise_power
    eve_slot = share * math.log2(1.0 + snr_scale * channel.eve_gain)
    slot_rates = [share * math.log2(1.0 + snr_scale * g) for g in channel.user_gains]
    if enforce_qos and any(r < q for r, q in zip(slot_rates, config.qos)):
        return 0.0
    return math.fsum(max(0.0, r - eve_slot) for r in slot_rates)
