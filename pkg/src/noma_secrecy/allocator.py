"""Closed-form minimum power and secrecy-optimal power allocation.

Meeting rate floor Q at position m with committed stronger-user power t
requires p >= (2**Q - 1) * (g*t + noise) / g, so the cheapest feasible
schedule is a single strongest-to-weakest pass with every floor tight.
The secrecy sum rate strictly gains when power moves from any weaker
user to the strongest one, so the optimal allocation keeps every floor
below the top tight as well and hands the strongest user the remainder;
it never needs the eavesdropper's channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .rates import decode_rate
from .types import PowerAllocation, SystemConfig

# Rate-floor slack is judged relative to the floor's magnitude, floored
# at the 1 bit/s/Hz scale so zero floors still get an absolute test.
RATE_REL_TOL = 1e-9
# Absolute tolerance on the power-budget residual of a certified optimum.
SUM_ABS_TOL = 1e-12


class InfeasiblePowerError(ValueError):
    """Raised when the power budget cannot satisfy every rate floor."""

    def __init__(self, total_power: float, p_min: float):
        super().__init__(
            f"total power {total_power!r} W is below the minimum {p_min!r} W "
            f"required by the rate floors"
        )
        self.total_power = total_power
        self.p_min = p_min


@dataclass(frozen=True)
class FeasibilityResult:
    """Minimum total power meeting every rate floor, with its per-user split.

    ``per_user_powers[m - 1]`` is the m-th weakest user's share in watts;
    at this operating point every floor holds with equality.
    """

    p_min: float
    per_user_powers: tuple[float, ...]

    def feasible_at(self, total_power: float) -> bool:
        """True when a budget of ``total_power`` watts can meet all floors."""
        return total_power >= self.p_min


def _validate_instance(gains, qos, noise_power):
    gains = tuple(float(g) for g in gains)
    qos = tuple(float(q) for q in qos)
    if not gains:
        raise ValueError("need at least one user gain")
    if len(gains) != len(qos):
        raise ValueError(f"{len(gains)} gains but {len(qos)} rate floors")
    if any(not g > 0.0 for g in gains):
        raise ValueError("user gains must be positive")
    if any(a > b for a, b in zip(gains, gains[1:])):
        raise ValueError("user gains must be sorted in non-decreasing order")
    if any(q < 0.0 or not math.isfinite(q) for q in qos):
        raise ValueError("rate floors must be finite and non-negative")
    if not noise_power > 0.0:
        raise ValueError(f"noise power must be positive, got {noise_power!r}")
    return gains, qos


def min_power(gains, qos, noise_power: float) -> FeasibilityResult:
    """Least total power under which every sorted user meets its rate floor.

    Strongest-to-weakest recursion: the m-th user's power is pinned by
    its floor against the interference of the (already minimal) powers
    committed to stronger users, so each step is individually tight and
    the total is minimal.
    """
    gains, qos = _validate_instance(gains, qos, noise_power)
    num_users = len(gains)
    powers = [0.0] * num_users
    committed = 0.0
    for m in range(num_users - 1, -1, -1):
        floor = 2.0 ** qos[m] - 1.0
        powers[m] = floor * (gains[m] * committed + noise_power) / gains[m]
        committed += powers[m]
    return FeasibilityResult(p_min=math.fsum(powers), per_user_powers=tuple(powers))


def optimal_allocation(config: SystemConfig, gains) -> PowerAllocation:
    """Power split maximizing the secrecy sum rate subject to the rate floors.

    Weakest-first recursion with every floor below the top user tight:

        c_m = (2**Q_m - 1) * (P g_m (1 - used) + noise) / (P g_m 2**Q_m)

    and the strongest user receives the unspent remainder. Depends only
    on the legitimate channels; the eavesdropper's gain shifts the
    attained secrecy rate but not the argmax.

    Raises :class:`InfeasiblePowerError` when the budget is below the
    floors' minimum power.
    """
    gains, qos = _validate_instance(gains, config.qos, config.noise_power)
    if len(gains) != config.num_users:
        raise ValueError(f"expected {config.num_users} gains, got {len(gains)}")
    feasibility = min_power(gains, qos, config.noise_power)
    if not feasibility.feasible_at(config.total_power):
        raise InfeasiblePowerError(config.total_power, feasibility.p_min)
    num_users = config.num_users
    coefficients = [0.0] * num_users
    used = 0.0
    for m in range(num_users - 1):
        scale = 2.0 ** qos[m]
        received = config.total_power * gains[m]
        coefficients[m] = (scale - 1.0) * (received * (1.0 - used) + config.noise_power) / (
            received * scale
        )
        used += coefficients[m]
    # Clamp the float residue: at exactly the minimum power the remainder
    # is zero up to rounding.
    coefficients[num_users - 1] = max(0.0, 1.0 - used)
    return PowerAllocation(tuple(coefficients))


@dataclass(frozen=True)
class ActiveSetReport:
    """Certificate that an allocation has the optimal active-constraint set.

    ``qos_slacks[m - 1]`` is rate minus floor for user m. The report
    passes when every user below the top is tight (within a relative
    rate tolerance), the top user is not violated, and the power budget
    is spent to within ``SUM_ABS_TOL``.
    """

    qos_slacks: tuple[float, ...]
    budget_slack: float
    tight_qos_count: int
    passed: bool


def verify_active_set(
    alloc: PowerAllocation, gains, config: SystemConfig
) -> ActiveSetReport:
    """Check an allocation for the structure the optimum must have."""
    gains, qos = _validate_instance(gains, config.qos, config.noise_power)
    if len(gains) != alloc.num_users or len(gains) != config.num_users:
        raise ValueError(
            f"user count mismatch: {len(gains)} gains, allocation {alloc.num_users}, "
            f"config {config.num_users}"
        )
    num_users = len(gains)
    slacks = []
    tight = []
    for m in range(1, num_users + 1):
        rate = decode_rate(
            gains[m - 1], alloc.coefficients, m, config.total_power, config.noise_power
        )
        slack = rate - qos[m - 1]
        slacks.append(slack)
        tight.append(abs(slack) <= RATE_REL_TOL * max(1.0, abs(qos[m - 1])))
    budget_slack = 1.0 - math.fsum(alloc.coefficients)
    top_tol = RATE_REL_TOL * max(1.0, abs(qos[-1]))
    passed = (
        all(tight[:-1])
        and slacks[-1] >= -top_tol
        and abs(budget_slack) <= SUM_ABS_TOL
    )
    return ActiveSetReport(
        qos_slacks=tuple(slacks),
        budget_slack=budget_slack,
        tight_qos_count=sum(tight),
        passed=passed,
    )
