"""Secrecy-rate power allocation for a superposition-coded downlink.

A transmitter serves M users on one carrier by superposing their
signals; receivers cancel weaker users' signals before decoding and an
eavesdropper attempts the same. The package provides the closed-form
minimum power meeting per-user rate floors, the closed-form power split
maximizing the secrecy sum rate, brute-force oracles certifying both,
seeded Monte Carlo sweeps against an orthogonal time-sharing benchmark,
and a CLI that writes sweep results as CSV.
"""

from .allocator import (
    ActiveSetReport,
    FeasibilityResult,
    InfeasiblePowerError,
    RATE_REL_TOL,
    SUM_ABS_TOL,
    min_power,
    optimal_allocation,
    verify_active_set,
)
from .baseline import oma_ssr
from .channel import ChannelSamplerSpec, locate_eve, sample_channel
from .montecarlo import SweepPoint, SweepResult, SweepSpec, config_at, run_sweep
from .oracle import (
    GRID_RESOLUTIONS,
    GridSearchResult,
    MAX_GRID_USERS,
    grid_search_ssr,
    sample_feasible,
    simplex_grid,
)
from .rates import (
    decode_rate,
    eve_rate,
    secrecy_sum_rate,
    secrecy_sum_rate_reduced,
    tail_rate_gap,
    user_rate,
)
from .types import (
    ChannelRealization,
    PowerAllocation,
    RateReport,
    SIMPLEX_TOL,
    SystemConfig,
    dbm_to_watts,
    watts_to_dbm,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveSetReport",
    "ChannelRealization",
    "ChannelSamplerSpec",
    "FeasibilityResult",
    "GRID_RESOLUTIONS",
    "GridSearchResult",
    "InfeasiblePowerError",
    "MAX_GRID_USERS",
    "PowerAllocation",
    "RATE_REL_TOL",
    "RateReport",
    "SIMPLEX_TOL",
    "SUM_ABS_TOL",
    "SweepPoint",
    "SweepResult",
    "SweepSpec",
    "SystemConfig",
    "config_at",
    "dbm_to_watts",
    "decode_rate",
    "eve_rate",
    "grid_search_ssr",
    "locate_eve",
    "min_power",
    "oma_ssr",
    "optimal_allocation",
    "run_sweep",
    "sample_channel",
    "sample_feasible",
    "secrecy_sum_rate",
    "secrecy_sum_rate_reduced",
    "simplex_grid",
    "tail_rate_gap",
    "user_rate",
    "verify_active_set",
    "watts_to_dbm",
]
