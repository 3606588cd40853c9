"""Paired-sample Monte Carlo sweeps over transmit power or rate floors.

Every sweep value is evaluated on the same set of channel draws (common
random numbers), so mean curves inherit the per-trial monotonicity of
the underlying quantities instead of carrying independent sampling
noise. Infeasible trials score zero secrecy sum rate and are counted.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .allocator import InfeasiblePowerError, optimal_allocation
from .baseline import oma_ssr
from .channel import ChannelSamplerSpec, sample_channel
from .rates import secrecy_sum_rate
from .types import ChannelRealization, SystemConfig, dbm_to_watts

SWEEP_VARIABLES = ("power_dbm", "qos")


@dataclass(frozen=True)
class SweepSpec:
    """One experiment: a variable, its values, and the fixed remainder.

    ``sweep_values`` must be strictly increasing. For a ``qos`` sweep
    each value replaces every user's rate floor; for a ``power_dbm``
    sweep each value replaces the total power (converted to watts).
    """

    sweep_variable: str
    sweep_values: tuple[float, ...]
    base_config: SystemConfig
    n_trials: int
    seed: int

    def __post_init__(self):
        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"sweep variable must be one of {SWEEP_VARIABLES}, "
                f"got {self.sweep_variable!r}"
            )
        object.__setattr__(self, "sweep_values", tuple(float(v) for v in self.sweep_values))
        if not self.sweep_values:
            raise ValueError("need at least one sweep value")
        if any(not math.isfinite(v) for v in self.sweep_values):
            raise ValueError("sweep values must be finite")
        if any(a >= b for a, b in zip(self.sweep_values, self.sweep_values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.sweep_variable == "qos" and self.sweep_values[0] < 0.0:
            raise ValueError("rate floors must be non-negative")
        if self.n_trials < 1:
            raise ValueError(f"need at least one trial, got {self.n_trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed {self.seed!r} outside 0..2**64-1")


@dataclass(frozen=True)
class SweepPoint:
    """Aggregates of one sweep value over all trials."""

    sweep_value: float
    mean_ssr_noma: float
    mean_ssr_oma: float
    infeasible_count: int
    n_trials: int


@dataclass(frozen=True)
class SweepResult:
    """All points of one sweep, in the order the values were given.

    ``base_config`` echoes the fixed parameters so a result is
    self-describing; the swept field's value in it is the template one.
    """

    sweep_variable: str
    seed: int
    base_config: SystemConfig
    points: tuple[SweepPoint, ...]

    @property
    def num_users(self) -> int:
        return self.base_config.num_users


def config_at(spec: SweepSpec, value: float) -> SystemConfig:
    """The base config with the swept variable replaced by ``value``."""
    if spec.sweep_variable == "power_dbm":
        return replace(spec.base_config, total_power=dbm_to_watts(value))
    return replace(spec.base_config, qos=(value,) * spec.base_config.num_users)


def _trial_outcome(
    config: SystemConfig, channel: ChannelRealization
) -> tuple[float, float, bool]:
    """(superposition SSR, time-sharing SSR, infeasible flag) for one draw."""
    benchmark = oma_ssr(channel, config)
    try:
        alloc = optimal_allocation(config, channel.user_gains)
    except InfeasiblePowerError:
        return 0.0, benchmark, True
    return secrecy_sum_rate(alloc, channel, config).ssr, benchmark, False


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Evaluate the sweep; output is byte-identical for any thread count.

    Trials are split into contiguous chunks across threads, each trial's
    draw is keyed by ``(seed, trial_index)``, and per-value means are
    reduced in trial order, so ``threads`` changes wall time only.
    """
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    n = spec.n_trials
    channels = [
        sample_channel(ChannelSamplerSpec(spec.seed, t), spec.base_config)
        for t in range(n)
    ]
    points = []
    for value in spec.sweep_values:
        config = config_at(spec, value)
        noma = [0.0] * n
        oma = [0.0] * n
        infeasible = [False] * n

        def evaluate(lo: int, hi: int):
            for t in range(lo, hi):
                noma[t], oma[t], infeasible[t] = _trial_outcome(config, channels[t])

        if threads == 1:
            evaluate(0, n)
        else:
            bounds = [(i * n // threads, (i + 1) * n // threads) for i in range(threads)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for future in [pool.submit(evaluate, lo, hi) for lo, hi in bounds]:
                    future.result()
        points.append(
            SweepPoint(
                sweep_value=value,
                mean_ssr_noma=math.fsum(noma) / n,
                mean_ssr_oma=math.fsum(oma) / n,
                infeasible_count=sum(infeasible),
                n_trials=n,
            )
        )
    return SweepResult(
        sweep_variable=spec.sweep_variable,
        seed=spec.seed,
        base_config=spec.base_config,
        points=tuple(points),
    )
