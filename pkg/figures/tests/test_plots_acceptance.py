"""Acceptance gate: figures from the simulator CLI's own sweep CSVs.

The CSVs are produced by invoking the installed CLI, so everything here
exercises the real cross-package contract: file in, figure out, and a
lossless round trip back to CSV.
"""

import subprocess
import sys

import pytest

import matplotlib.pyplot as plt

from noma_figures.plots import (
    AXIS_LABELS,
    Y_LABEL,
    build_figure,
    plot_power_sweep,
    plot_qos_sweep,
    read_sweep_csv,
    write_sweep_csv,
)

SEED = 12345
TRIALS = 10000


def _report(capsys, name: str, violations: list[str]) -> None:
    verdict = "PASS" if not violations else "FAIL"
    with capsys.disabled():
        print(f"\nACCEPTANCE {name}: {verdict}", flush=True)
    assert not violations, f"{name}: " + "; ".join(violations[:10])


def _run_sweep_cli(out, *args):
    proc = subprocess.run(
        [
            sys.executable, "-m", "noma_secrecy", "sweep",
            "--trials", str(TRIALS), "--threads", "8", "--seed", str(SEED),
            "--out", str(out), *args,
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return out


@pytest.fixture(scope="module")
def power_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweeps") / "power.csv"
    return _run_sweep_cli(
        out,
        "--variable", "power_dbm",
        "--values", "10,20,30,40",
        "--m-values", "2,3,4",
        "--qos-floor", "1.0",
    )


@pytest.fixture(scope="module")
def qos_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweeps") / "qos.csv"
    return _run_sweep_cli(
        out,
        "--variable", "qos",
        "--values", "0.5,1.0,1.5,2.0,2.5,3.0,3.5,4.0,4.5,5.0,5.5,6.0",
        "--m-values", "2,3",
        "--power-dbm", "20.0",
    )


def _series_from_raw_text(path):
    """Independent flat parse: (m, scheme) -> list of mean_ssr strings."""
    series = {}
    for line in path.read_text(encoding="utf-8").splitlines()[1:]:
        fields = line.split(",")
        series.setdefault((int(fields[2]), fields[3]), []).append(float(fields[4]))
    return series


def _check_figure(csv_path, out_path, plot, xlabel, expected_curves):
    violations = []
    table = plot(csv_path, out_path)
    if not out_path.exists() or out_path.read_bytes()[:8] != b"\x89PNG\r\n\x1a\n":
        violations.append("no PNG file written")
    fig = build_figure(table)
    try:
        ax = fig.axes[0]
        if len(ax.lines) != expected_curves:
            violations.append(f"{len(ax.lines)} curves, expected {expected_curves}")
        if ax.get_xlabel() != xlabel:
            violations.append(f"x-axis label {ax.get_xlabel()!r}")
        if ax.get_ylabel() != Y_LABEL:
            violations.append(f"y-axis label {ax.get_ylabel()!r}")
        raw = _series_from_raw_text(csv_path)
        for line in ax.lines:
            label = line.get_label().split()
            key = (int(label[0].removeprefix("M=")), label[1].lower())
            if list(line.get_ydata()) != raw[key]:
                violations.append(f"curve {line.get_label()!r} differs from the CSV")
    finally:
        plt.close(fig)
    return table, violations


def test_power_figure_from_cli_csv(capsys, tmp_path, power_csv):
    table, violations = _check_figure(
        power_csv, tmp_path / "power.png", plot_power_sweep,
        AXIS_LABELS["power_dbm"], expected_curves=6,
    )
    if table.values != (10.0, 20.0, 30.0, 40.0):
        violations.append(f"values {table.values!r}")
    _report(capsys, "plots-power-figure", violations)


def test_qos_figure_from_cli_csv(capsys, tmp_path, qos_csv):
    table, violations = _check_figure(
        qos_csv, tmp_path / "qos.png", plot_qos_sweep,
        AXIS_LABELS["qos"], expected_curves=4,
    )
    if len(table.values) != 12:
        violations.append(f"{len(table.values)} sweep values, expected 12")
    _report(capsys, "plots-qos-figure", violations)


def test_round_trip_export_matches_cli_bytes(capsys, tmp_path, power_csv, qos_csv):
    violations = []
    for name, source in (("power", power_csv), ("qos", qos_csv)):
        table = read_sweep_csv(source)
        out = tmp_path / f"{name}-rt.csv"
        write_sweep_csv(table, out)
        if out.read_bytes() != source.read_bytes():
            violations.append(f"{name} CSV did not round trip byte-identically")
    _report(capsys, "plots-round-trip", violations)
