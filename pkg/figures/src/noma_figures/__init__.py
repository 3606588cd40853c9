"""Figure rendering for sweep CSVs from the secrecy-rate simulator CLI."""

from .plots import (
    AXIS_LABELS,
    CSV_HEADER,
    SCHEMES,
    SWEEP_VARIABLES,
    Y_LABEL,
    SchemaError,
    SweepTable,
    build_figure,
    main,
    plot_power_sweep,
    plot_qos_sweep,
    read_sweep_csv,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AXIS_LABELS",
    "CSV_HEADER",
    "SCHEMES",
    "SWEEP_VARIABLES",
    "Y_LABEL",
    "SchemaError",
    "SweepTable",
    "build_figure",
    "main",
    "plot_power_sweep",
    "plot_qos_sweep",
    "read_sweep_csv",
    "write_sweep_csv",
    "__version__",
]
