"""Command-line interface for the secrecy power-allocation toolkit.

Subcommands: ``pmin`` (minimum feasible power), ``allocate``
(closed-form optimum with its certificate), ``sweep`` (Monte Carlo
curves to CSV), ``verify`` (closed form against the brute-force
oracles). Exit codes: 0 success, 2 usage or domain error, 3 infeasible
instance, 4 verification failure. Decibel units exist only here; the
library itself is all linear watts.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .allocator import (
    InfeasiblePowerError,
    min_power,
    optimal_allocation,
    verify_active_set,
)
from .channel import ChannelSamplerSpec, locate_eve, sample_channel
from .montecarlo import SweepSpec, SweepResult, run_sweep
from .oracle import GRID_RESOLUTIONS, MAX_GRID_USERS, grid_search_ssr, sample_feasible
from .rates import decode_rate, secrecy_sum_rate
from .types import (
    ChannelRealization,
    PowerAllocation,
    SystemConfig,
    dbm_to_watts,
    watts_to_dbm,
)

DEFAULT_SEED = 12345
CSV_HEADER = "sweep_var,sweep_value,m,scheme,mean_ssr,infeasible_count,n_trials,seed"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY_FAILED = 4


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from err
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from err
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _load_file_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a single JSON object")
    return data


def _pick(flag_value, file_config: dict, key: str, default=None):
    """Flags override the config file; the file overrides built-in defaults."""
    if flag_value is not None:
        return flag_value
    if key in file_config:
        return file_config[key]
    return default


def _resolve_level(
    watts, dbm, file_config: dict, name: str, default_dbm: float | None = None
) -> float:
    """One power level from a --<name>-watts / --<name>-dbm pair plus config."""
    if watts is not None and dbm is not None:
        raise ValueError(f"give only one of --{name}-watts and --{name}-dbm")
    if watts is None and dbm is None:
        watts = file_config.get(f"{name}_watts")
        dbm = file_config.get(f"{name}_dbm")
        if watts is not None and dbm is not None:
            raise ValueError(f"config file sets both {name}_watts and {name}_dbm")
    if watts is not None:
        return float(watts)
    if dbm is not None:
        return dbm_to_watts(float(dbm))
    if default_dbm is not None:
        return dbm_to_watts(default_dbm)
    raise ValueError(f"missing {name} level: give --{name}-watts or --{name}-dbm")


def _require_floats(value, flag: str) -> tuple[float, ...]:
    if value is None:
        raise ValueError(f"missing {flag} (flag or config file)")
    return tuple(float(v) for v in value)


def _fmt_floats(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def _cmd_pmin(args) -> int:
    file_config = _load_file_config(args.config)
    gains = _require_floats(_pick(args.gains, file_config, "gains"), "--gains")
    qos = _require_floats(_pick(args.qos, file_config, "qos"), "--qos")
    noise = _resolve_level(args.noise_watts, args.noise_dbm, file_config, "noise")
    result = min_power(gains, qos, noise)
    p_min_dbm = watts_to_dbm(result.p_min) if result.p_min > 0.0 else None
    if args.json:
        print(
            json.dumps(
                {
                    "p_min_watts": result.p_min,
                    "p_min_dbm": p_min_dbm,
                    "per_user_watts": list(result.per_user_powers),
                }
            )
        )
    else:
        print(f"p_min_watts: {result.p_min!r}")
        print(f"p_min_dbm: {'-inf' if p_min_dbm is None else repr(p_min_dbm)}")
        print(f"per_user_watts: {_fmt_floats(result.per_user_powers)}")
    return EXIT_OK


def _cmd_allocate(args) -> int:
    file_config = _load_file_config(args.config)
    gains = _require_floats(_pick(args.gains, file_config, "gains"), "--gains")
    qos = _require_floats(_pick(args.qos, file_config, "qos"), "--qos")
    noise = _resolve_level(args.noise_watts, args.noise_dbm, file_config, "noise")
    power = _resolve_level(args.power_watts, args.power_dbm, file_config, "power")
    config = SystemConfig(
        num_users=len(gains), total_power=power, noise_power=noise, qos=qos
    )
    alloc = optimal_allocation(config, gains)
    report = verify_active_set(alloc, gains, config)
    rates = [
        decode_rate(gains[m - 1], alloc.coefficients, m, power, noise)
        for m in range(1, len(gains) + 1)
    ]
    eve_gain = _pick(args.eve_gain, file_config, "eve_gain")
    ssr = None
    if eve_gain is not None:
        eve_gain = float(eve_gain)
        channel = ChannelRealization(
            user_gains=gains, eve_gain=eve_gain, eve_rank=locate_eve(gains, eve_gain)
        )
        ssr = secrecy_sum_rate(alloc, channel, config).ssr
    if args.json:
        print(
            json.dumps(
                {
                    "gamma": list(alloc.coefficients),
                    "rates": rates,
                    "ssr": ssr,
                    "report": {
                        "qos_slacks": list(report.qos_slacks),
                        "budget_slack": report.budget_slack,
                        "tight_qos_count": report.tight_qos_count,
                        "passed": report.passed,
                    },
                }
            )
        )
    else:
        print(f"gamma: {_fmt_floats(alloc.coefficients)}")
        print(f"rates: {_fmt_floats(rates)}")
        print(f"floors: {_fmt_floats(config.qos)}")
        print(f"budget_slack: {report.budget_slack!r}")
        print(f"tight_qos_count: {report.tight_qos_count}")
        print(f"certificate: {'PASS' if report.passed else 'FAIL'}")
        if ssr is not None:
            print(f"ssr: {ssr!r}")
    return EXIT_OK


def _sweep_rows(results: dict[int, SweepResult]) -> list[str]:
    """CSV rows ordered by sweep value, then user count, then scheme."""
    rows = []
    m_values = sorted(results)
    n_points = len(results[m_values[0]].points)
    for index in range(n_points):
        for m in m_values:
            result = results[m]
            point = result.points[index]
            prefix = (
                f"{result.sweep_variable},{repr(float(point.sweep_value))},{m}"
            )
            suffix = f"{point.n_trials},{result.seed}"
            rows.append(
                f"{prefix},noma,{repr(point.mean_ssr_noma)},"
                f"{point.infeasible_count},{suffix}"
            )
            # Equal time slots always transmit, so the benchmark never
            # declares a trial infeasible under the default scoring.
            rows.append(f"{prefix},oma,{repr(point.mean_ssr_oma)},0,{suffix}")
    return rows


def _cmd_sweep(args) -> int:
    file_config = _load_file_config(args.config)
    variable = _pick(args.variable, file_config, "variable", "power_dbm")
    if variable == "power_dbm":
        default_values = (0.0, 10.0, 20.0, 30.0, 40.0)
    else:
        default_values = tuple(0.5 * k for k in range(1, 13))
    values = tuple(
        float(v) for v in _pick(args.values, file_config, "values", default_values)
    )
    m_values = tuple(
        int(m) for m in _pick(args.m_values, file_config, "m_values", (2, 3, 4))
    )
    if len(set(m_values)) != len(m_values) or any(m < 1 for m in m_values):
        raise ValueError(f"user counts must be unique positive integers, got {m_values}")
    qos_floor = float(_pick(args.qos_floor, file_config, "qos_floor", 1.0))
    power_dbm = float(_pick(args.power_dbm, file_config, "power_dbm", 20.0))
    noise_dbm = float(_pick(args.noise_dbm, file_config, "noise_dbm", -70.0))
    alpha = float(_pick(args.alpha, file_config, "alpha", 3.0))
    distance = float(_pick(args.distance, file_config, "distance", 80.0))
    trials = int(_pick(args.trials, file_config, "trials", 1000))
    seed = int(_pick(args.seed, file_config, "seed", DEFAULT_SEED))
    threads = int(_pick(args.threads, file_config, "threads", 1))
    out = _pick(args.out, file_config, "out")
    if out is None:
        raise ValueError("missing output path: give --out (flag or config file)")
    results: dict[int, SweepResult] = {}
    for m in sorted(m_values):
        base = SystemConfig(
            num_users=m,
            total_power=dbm_to_watts(power_dbm),
            noise_power=dbm_to_watts(noise_dbm),
            qos=(qos_floor,) * m,
            path_loss_exponent=alpha,
            user_distances=(distance,) * m,
            eve_distance=distance,
        )
        spec = SweepSpec(
            sweep_variable=variable,
            sweep_values=values,
            base_config=base,
            n_trials=trials,
            seed=seed,
        )
        results[m] = run_sweep(spec, threads=threads)
    rows = _sweep_rows(results)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {out} ({len(rows)} rows: {len(values)} values x {len(m_values)} user counts x 2 schemes)")
    return EXIT_OK


def _shift_to_top(alloc: PowerAllocation, fraction: float) -> PowerAllocation:
    """Fault injection: move a share of every weaker user's power to the top."""
    if fraction <= 0.0:
        return alloc
    coefficients = list(alloc.coefficients)
    moved = 0.0
    for i in range(len(coefficients) - 1):
        delta = coefficients[i] * fraction
        coefficients[i] -= delta
        moved += delta
    coefficients[-1] += moved
    return PowerAllocation(tuple(coefficients))


def _random_instance(
    seed: int, index: int, num_users: int, noise_power: float, power_span: float
):
    """A feasible random instance: fading draw, floors in [0.5, 2], power in [1, span] x minimum."""
    probe = SystemConfig(
        num_users=num_users, total_power=1.0, noise_power=noise_power, qos=(0.0,) * num_users
    )
    channel = sample_channel(ChannelSamplerSpec(seed, index), probe)
    rng = np.random.default_rng((seed, index, 1))
    qos = tuple(float(q) for q in rng.uniform(0.5, 2.0, num_users))
    feasibility = min_power(channel.user_gains, qos, noise_power)
    total = feasibility.p_min * float(rng.uniform(1.0, power_span))
    config = SystemConfig(
        num_users=num_users, total_power=total, noise_power=noise_power, qos=qos
    )
    return channel, config


def _cmd_verify(args) -> int:
    file_config = _load_file_config(args.config)
    seed = int(_pick(args.seed, file_config, "seed", DEFAULT_SEED))
    instances = int(_pick(args.instances, file_config, "instances", 200))
    m_values = tuple(int(m) for m in _pick(args.m_values, file_config, "m_values", (2, 3)))
    resolution = float(_pick(args.resolution, file_config, "resolution", 1e-2))
    samples = int(_pick(args.samples, file_config, "samples", 200))
    power_span = float(_pick(args.power_span, file_config, "power_span", 10.0))
    perturb_gamma = float(_pick(args.perturb_gamma, file_config, "perturb_gamma", 0.0))
    if instances < 1:
        raise ValueError(f"need at least one instance, got {instances}")
    if any(m < 1 for m in m_values):
        raise ValueError(f"user counts must be positive, got {m_values}")
    if any(m > MAX_GRID_USERS for m in m_values):
        raise ValueError(
            f"grid enumeration supports at most {MAX_GRID_USERS} users, got {m_values}"
        )
    if resolution not in GRID_RESOLUTIONS:
        raise ValueError(
            f"resolution must be one of {GRID_RESOLUTIONS}, got {resolution!r}"
        )
    noise_power = dbm_to_watts(-70.0)
    slack = 10.0 * resolution
    dominance_bad = 0
    certificate_bad = 0
    sample_bad = 0
    tight_bad = 0
    detect_bad = 0
    invariance_bad = 0

    for index in range(instances):
        num_users = m_values[index % len(m_values)]
        channel, config = _random_instance(
            seed, index, num_users, noise_power, power_span
        )
        alloc = _shift_to_top(
            optimal_allocation(config, channel.user_gains), perturb_gamma
        )
        report = verify_active_set(alloc, channel.user_gains, config)
        if not report.passed:
            certificate_bad += 1
        closed_ssr = secrecy_sum_rate(alloc, channel, config).ssr
        grid = grid_search_ssr(channel, config, resolution)
        if grid.best_ssr is not None and closed_ssr < grid.best_ssr - slack:
            dominance_bad += 1
        for sampled in sample_feasible(channel, config, samples, (seed, index, 2)):
            if secrecy_sum_rate(sampled, channel, config).ssr > closed_ssr + 1e-9:
                sample_bad += 1
                break

    for index in range(instances):
        num_users = m_values[index % len(m_values)]
        channel, config = _random_instance(
            seed, index, num_users, noise_power, power_span
        )
        feasibility = min_power(channel.user_gains, config.qos, config.noise_power)
        powers = feasibility.per_user_powers
        tolerances = [1e-9 * max(1.0, q) for q in config.qos]
        # decode_rate with unit total power treats absolute watts as fractions.
        rates = [
            decode_rate(channel.user_gains[m - 1], powers, m, 1.0, config.noise_power)
            for m in range(1, num_users + 1)
        ]
        if any(abs(r - q) > tol for r, q, tol in zip(rates, config.qos, tolerances)):
            tight_bad += 1
        shaved = list(powers)
        shaved[index % num_users] *= 1.0 - 1e-6
        rates = [
            decode_rate(channel.user_gains[m - 1], tuple(shaved), m, 1.0, config.noise_power)
            for m in range(1, num_users + 1)
        ]
        if all(abs(r - q) <= tol for r, q, tol in zip(rates, config.qos, tolerances)):
            detect_bad += 1

    invariance_total = min(instances, 8)
    for index in range(invariance_total):
        num_users = m_values[index % len(m_values)]
        channel, config = _random_instance(
            seed, index, num_users, noise_power, power_span
        )
        base_grid = grid_search_ssr(channel, config, resolution)
        if base_grid.best_alloc is None:
            continue
        for scale in (0.5, 2.0):
            eve_gain = channel.eve_gain * scale
            if locate_eve(channel.user_gains, eve_gain) != channel.eve_rank:
                continue
            scaled = ChannelRealization(
                user_gains=channel.user_gains,
                eve_gain=eve_gain,
                eve_rank=channel.eve_rank,
            )
            scaled_grid = grid_search_ssr(scaled, config, resolution)
            if scaled_grid.best_alloc is None or any(
                abs(a - b) > resolution + 1e-12
                for a, b in zip(
                    base_grid.best_alloc.coefficients, scaled_grid.best_alloc.coefficients
                )
            ):
                invariance_bad += 1

    checks = [
        ("grid-dominance", dominance_bad, instances),
        ("active-set-certificate", certificate_bad, instances),
        ("sample-dominance", sample_bad, instances),
        ("min-power-tightness", tight_bad, instances),
        ("min-power-perturbation-detected", detect_bad, instances),
        ("eavesdropper-invariance", invariance_bad, invariance_total),
    ]
    failed = False
    for name, bad, total in checks:
        status = "ok" if bad == 0 else f"FAIL ({bad} instances)"
        print(f"{name}: {total - bad}/{total} {status}")
        failed = failed or bad > 0
    print(f"verify: {'FAIL' if failed else 'PASS'}")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-secrecy",
        description=(
            "Secrecy-rate power allocation for a superposition downlink: "
            "closed-form solutions, Monte Carlo sweeps, brute-force verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed(p):
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help=f"RNG seed, default {DEFAULT_SEED}; deterministic commands accept it for uniformity",
        )

    def add_config(p):
        p.add_argument(
            "--config",
            default=None,
            help="JSON file with defaults for this command's options; flags override it",
        )

    def add_instance_flags(p):
        p.add_argument("--gains", type=_parse_float_list, default=None,
                       help="sorted channel power gains, weakest first, e.g. 1,4")
        p.add_argument("--qos", type=_parse_float_list, default=None,
                       help="per-user rate floors in bits/s/Hz, e.g. 1,1")
        p.add_argument("--noise-watts", type=float, default=None, help="noise power in watts")
        p.add_argument("--noise-dbm", type=float, default=None, help="noise power in dBm")

    pmin = sub.add_parser("pmin", help="minimum total power meeting every rate floor")
    add_instance_flags(pmin)
    pmin.add_argument("--json", action="store_true", help="machine-readable output")
    add_config(pmin)
    add_seed(pmin)
    pmin.set_defaults(handler=_cmd_pmin)

    allocate = sub.add_parser(
        "allocate", help="secrecy-optimal power split with its certificate"
    )
    add_instance_flags(allocate)
    allocate.add_argument("--power-watts", type=float, default=None, help="total power in watts")
    allocate.add_argument("--power-dbm", type=float, default=None, help="total power in dBm")
    allocate.add_argument(
        "--eve-gain", type=float, default=None,
        help="eavesdropper channel power gain; adds the attained secrecy sum rate",
    )
    allocate.add_argument("--json", action="store_true", help="machine-readable output")
    add_config(allocate)
    add_seed(allocate)
    allocate.set_defaults(handler=_cmd_allocate)

    sweep = sub.add_parser("sweep", help="Monte Carlo sweep written as CSV")
    sweep.add_argument(
        "--variable", choices=("power_dbm", "qos"), default=None,
        help="swept quantity (default power_dbm)",
    )
    sweep.add_argument(
        "--values", type=_parse_float_list, default=None,
        help="strictly increasing sweep values, e.g. 0,10,20,30,40",
    )
    sweep.add_argument(
        "--m-values", type=_parse_int_list, default=None,
        help="user counts, one sweep each (default 2,3,4)",
    )
    sweep.add_argument("--qos-floor", type=float, default=None,
                       help="rate floor for every user (default 1.0), ignored while sweeping qos")
    sweep.add_argument("--power-dbm", type=float, default=None,
                       help="total power in dBm (default 20.0), ignored while sweeping power")
    sweep.add_argument("--noise-dbm", type=float, default=None,
                       help="noise power in dBm (default -70.0)")
    sweep.add_argument("--alpha", type=float, default=None,
                       help="path loss exponent (default 3.0)")
    sweep.add_argument("--distance", type=float, default=None,
                       help="distance in meters for every node (default 80.0)")
    sweep.add_argument("--trials", type=int, default=None,
                       help="Monte Carlo trials per point (default 1000)")
    sweep.add_argument("--threads", type=int, default=None,
                       help="worker threads; any value gives identical output (default 1)")
    sweep.add_argument("--out", default=None, help="output CSV path")
    add_config(sweep)
    add_seed(sweep)
    sweep.set_defaults(handler=_cmd_sweep)

    verify = sub.add_parser(
        "verify", help="check the closed form against brute-force oracles"
    )
    verify.add_argument("--instances", type=int, default=None,
                        help="random instances per check (default 200)")
    verify.add_argument("--m-values", type=_parse_int_list, default=None,
                        help="user counts to alternate over (default 2,3; grid caps at 4)")
    verify.add_argument("--resolution", type=float, default=None,
                        help="grid pitch, one of 0.01 or 0.001 (default 0.01)")
    verify.add_argument("--samples", type=int, default=None,
                        help="random feasible allocations per instance (default 200)")
    verify.add_argument("--power-span", type=float, default=None,
                        help="power drawn up to this multiple of the minimum (default 10)")
    verify.add_argument("--perturb-gamma", type=float, default=None,
                        help="fault injection: shift this fraction of weaker users' power to the top user")
    add_config(verify)
    add_seed(verify)
    verify.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InfeasiblePowerError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
