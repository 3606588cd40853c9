"""Line figures for sweep CSVs produced by the simulator CLI.

This package consumes only the CSV contract: the bit-exact header
``sweep_var,sweep_value,m,scheme,mean_ssr,infeasible_count,n_trials,seed``
with rows grouped by sweep value, then user count, then scheme. Every
plotted number is read verbatim from the file; nothing is recomputed.
``write_sweep_csv`` re-emits a parsed table so tests can prove the
round trip is lossless.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

CSV_HEADER = "sweep_var,sweep_value,m,scheme,mean_ssr,infeasible_count,n_trials,seed"
COLUMNS = tuple(CSV_HEADER.split(","))
SCHEMES = ("noma", "oma")
SWEEP_VARIABLES = ("power_dbm", "qos")
AXIS_LABELS = {
    "power_dbm": "transmit power (dBm)",
    "qos": "rate floor per user (bits/s/Hz)",
}
Y_LABEL = "average secrecy sum rate (bits/s/Hz)"


class SchemaError(ValueError):
    """CSV contract violation, pinned to a 1-based line and column."""

    def __init__(self, path, line: int, column: int, message: str):
        super().__init__(f"{path}, line {line}, column {column}: {message}")
        self.path = str(path)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Row:
    line: int
    sweep_var: str
    sweep_value: float
    m: int
    scheme: str
    mean_ssr: float
    infeasible_count: int
    n_trials: int
    seed: int


@dataclass(frozen=True)
class SweepTable:
    """One parsed sweep CSV: constant run metadata plus one series per curve."""

    sweep_var: str
    seed: int
    n_trials: int
    values: tuple[float, ...]
    m_values: tuple[int, ...]
    means: dict[tuple[int, str], tuple[float, ...]]
    infeasible: dict[tuple[int, str], tuple[int, ...]]

    @property
    def n_curves(self) -> int:
        return len(self.m_values) * len(SCHEMES)

    def curve(self, m: int, scheme: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return self.values, self.means[(m, scheme)]


def _check_header(path, line: str) -> None:
    fields = line.split(",")
    for i, expected in enumerate(COLUMNS):
        if i >= len(fields):
            raise SchemaError(path, 1, i + 1, f"missing header field {expected!r}")
        if fields[i] != expected:
            raise SchemaError(
                path, 1, i + 1, f"expected header field {expected!r}, got {fields[i]!r}"
            )
    if len(fields) > len(COLUMNS):
        raise SchemaError(
            path, 1, len(COLUMNS) + 1, f"unexpected extra header field {fields[len(COLUMNS)]!r}"
        )


def _parse_float(path, line_no: int, column: int, text: str, name: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SchemaError(
            path, line_no, column, f"expected a number for {name}, got {text!r}"
        ) from None
    if not math.isfinite(value):
        raise SchemaError(path, line_no, column, f"{name} must be finite, got {text!r}")
    return value


def _parse_int(path, line_no: int, column: int, text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SchemaError(
            path, line_no, column, f"expected an integer for {name}, got {text!r}"
        ) from None


def _parse_row(path, line_no: int, line: str) -> _Row:
    fields = line.split(",")
    if len(fields) != len(COLUMNS):
        column = min(len(fields), len(COLUMNS)) + 1
        raise SchemaError(
            path, line_no, column, f"{len(fields)} fields, expected {len(COLUMNS)}"
        )
    sweep_var = fields[0]
    if sweep_var not in SWEEP_VARIABLES:
        raise SchemaError(path, line_no, 1, f"unknown sweep_var {sweep_var!r}")
    sweep_value = _parse_float(path, line_no, 2, fields[1], "sweep_value")
    m = _parse_int(path, line_no, 3, fields[2], "m")
    if m < 1:
        raise SchemaError(path, line_no, 3, f"user count must be positive, got {m}")
    scheme = fields[3]
    if scheme not in SCHEMES:
        raise SchemaError(path, line_no, 4, f"unknown scheme {scheme!r}")
    mean_ssr = _parse_float(path, line_no, 5, fields[4], "mean_ssr")
    if mean_ssr < 0.0:
        raise SchemaError(path, line_no, 5, f"mean_ssr must be non-negative, got {fields[4]}")
    infeasible_count = _parse_int(path, line_no, 6, fields[5], "infeasible_count")
    if infeasible_count < 0:
        raise SchemaError(
            path, line_no, 6, f"infeasible_count must be non-negative, got {infeasible_count}"
        )
    n_trials = _parse_int(path, line_no, 7, fields[6], "n_trials")
    if n_trials < 1:
        raise SchemaError(path, line_no, 7, f"n_trials must be positive, got {n_trials}")
    if infeasible_count > n_trials:
        raise SchemaError(
            path, line_no, 6,
            f"infeasible_count {infeasible_count} exceeds n_trials {n_trials}",
        )
    seed = _parse_int(path, line_no, 8, fields[7], "seed")
    if not 0 <= seed < 2**64:
        raise SchemaError(path, line_no, 8, f"seed outside [0, 2^64), got {seed}")
    return _Row(
        line=line_no,
        sweep_var=sweep_var,
        sweep_value=sweep_value,
        m=m,
        scheme=scheme,
        mean_ssr=mean_ssr,
        infeasible_count=infeasible_count,
        n_trials=n_trials,
        seed=seed,
    )


def read_sweep_csv(path) -> SweepTable:
    """Parse and validate one sweep CSV; any violation names its line and column."""
    with open(path, encoding="utf-8", newline="") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SchemaError(path, 1, 1, "empty file")
    _check_header(path, lines[0])
    rows = [_parse_row(path, i + 2, text) for i, text in enumerate(lines[1:])]
    if not rows:
        raise SchemaError(path, 2, 1, "no data rows")
    first = rows[0]
    for row in rows:
        if row.sweep_var != first.sweep_var:
            raise SchemaError(path, row.line, 1, "sweep_var changes mid-file")
        if row.n_trials != first.n_trials:
            raise SchemaError(path, row.line, 7, "n_trials changes mid-file")
        if row.seed != first.seed:
            raise SchemaError(path, row.line, 8, "seed changes mid-file")

    m_values = tuple(sorted({row.m for row in rows}))
    pattern = [(m, scheme) for m in m_values for scheme in SCHEMES]
    block_size = len(pattern)
    if len(rows) % block_size != 0:
        raise SchemaError(
            path, rows[-1].line, 3,
            f"{len(rows)} data rows do not tile {block_size} rows per sweep value",
        )
    values: list[float] = []
    means: dict[tuple[int, str], list[float]] = {key: [] for key in pattern}
    infeasible: dict[tuple[int, str], list[int]] = {key: [] for key in pattern}
    for b in range(len(rows) // block_size):
        block = rows[b * block_size : (b + 1) * block_size]
        value = block[0].sweep_value
        if values and not value > values[-1]:
            raise SchemaError(
                path, block[0].line, 2,
                f"sweep values must increase, got {value!r} after {values[-1]!r}",
            )
        for row, (m, scheme) in zip(block, pattern):
            if row.sweep_value != value:
                raise SchemaError(
                    path, row.line, 2, "sweep value changes inside its row group"
                )
            if row.m != m:
                raise SchemaError(path, row.line, 3, f"expected user count {m}, got {row.m}")
            if row.scheme != scheme:
                raise SchemaError(
                    path, row.line, 4, f"expected scheme {scheme!r}, got {row.scheme!r}"
                )
            means[(m, scheme)].append(row.mean_ssr)
            infeasible[(m, scheme)].append(row.infeasible_count)
        values.append(value)
    return SweepTable(
        sweep_var=first.sweep_var,
        seed=first.seed,
        n_trials=first.n_trials,
        values=tuple(values),
        m_values=m_values,
        means={key: tuple(series) for key, series in means.items()},
        infeasible={key: tuple(series) for key, series in infeasible.items()},
    )


def write_sweep_csv(table: SweepTable, path) -> None:
    """Emit a parsed table back into the exact CSV contract."""
    lines = [CSV_HEADER]
    for i, value in enumerate(table.values):
        for m in table.m_values:
            for scheme in SCHEMES:
                lines.append(
                    f"{table.sweep_var},{value!r},{m},{scheme},"
                    f"{table.means[(m, scheme)][i]!r},{table.infeasible[(m, scheme)][i]},"
                    f"{table.n_trials},{table.seed}"
                )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def build_figure(table: SweepTable):
    """One line per (user count, scheme); series plotted verbatim."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, m in enumerate(table.m_values):
        color = colors[i % len(colors)]
        for scheme in SCHEMES:
            xs, ys = table.curve(m, scheme)
            ax.plot(
                xs,
                ys,
                label=f"M={m} {scheme.upper()}",
                color=color,
                linestyle="-" if scheme == "noma" else "--",
                marker="o" if scheme == "noma" else "s",
                markersize=4.0,
            )
    ax.set_xlabel(AXIS_LABELS[table.sweep_var])
    ax.set_ylabel(Y_LABEL)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.text(
        0.01, 0.01,
        f"seed {table.seed}, {table.n_trials} trials per point",
        fontsize=8, color="0.35",
    )
    fig.tight_layout(rect=(0.0, 0.05, 1.0, 1.0))
    return fig


def _plot(csv_path, out_path, sweep_var: str) -> SweepTable:
    table = read_sweep_csv(csv_path)
    if table.sweep_var != sweep_var:
        raise SchemaError(
            csv_path, 2, 1, f"expected sweep_var {sweep_var!r}, got {table.sweep_var!r}"
        )
    fig = build_figure(table)
    try:
        fig.savefig(out_path)
    finally:
        plt.close(fig)
    return table


def plot_power_sweep(csv_path, out_path) -> SweepTable:
    """Average secrecy sum rate versus transmit power, one curve per (M, scheme)."""
    return _plot(csv_path, out_path, "power_dbm")


def plot_qos_sweep(csv_path, out_path) -> SweepTable:
    """Average secrecy sum rate versus the per-user rate floor."""
    return _plot(csv_path, out_path, "qos")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="noma-figures",
        description="Render a sweep CSV from the simulator CLI into a line figure.",
    )
    parser.add_argument("csv_path", help="sweep CSV produced by the simulator CLI")
    parser.add_argument("out_path", help="figure file to write; format from the extension")
    args = parser.parse_args(argv)
    try:
        table = read_sweep_csv(args.csv_path)
        if table.sweep_var == "power_dbm":
            plot_power_sweep(args.csv_path, args.out_path)
        else:
            plot_qos_sweep(args.csv_path, args.out_path)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(f"wrote {args.out_path} ({table.n_curves} curves)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
