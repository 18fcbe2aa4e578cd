"""Parameter-sweep harness with deterministic, order-stable CSV/JSON output.

A scan grid names one or two axes (epsilon, delta, gamma_rate) over a fixed
gate context; every grid point is an independent simulation, so points may be
evaluated in parallel without changing the result.  Rows are emitted in
outer-axis-major order and serialized with 17 significant digits so a
re-parsed file reproduces the values bit-for-bit.
"""

from __future__ import annotations

import csv
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import dynamics, metrics
from .dynamics import DEFAULT_STEP, LindbladSpec, NO_NOISE, three_level_noise
from .model import ErrorModel, GateSpec, TwoQubitGateSpec
from .pulses import DCNHQC, Schedule, build_encoded, build_single_qubit, build_two_qubit

AXIS_NAMES = ("epsilon", "delta", "gamma_rate")
METRICS = ("gate_six_state", "state")
LOG10_FLOOR = -14.0
FLOAT_FORMAT = ".17e"


@dataclass(frozen=True)
class ScanAxis:
    name: str
    lo: float
    hi: float
    points: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"unknown axis {self.name!r}; known: {AXIS_NAMES}")
        if self.points < 2:
            raise ValueError("axis needs at least 2 points")
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name}: need lo < hi, got [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class ScanContext:
    """Everything held fixed across the grid."""

    gate: GateSpec | TwoQubitGateSpec
    protocol: str = DCNHQC
    encoded: bool = False
    epsilon: float = 0.0
    delta: float = 0.0
    gamma_rate: float = 0.0
    dephasing: str = "collective"
    omega_m: float = 1.0
    initial: str = "+"   # cardinal label, used by the "state" metric
    step: float = DEFAULT_STEP


@dataclass(frozen=True)
class ScanGrid:
    axes: tuple[ScanAxis, ...]
    fixed: ScanContext

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a scan has one or two axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"axis names must be distinct, got {names}")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.points for a in self.axes)

    def points(self) -> list[tuple[float, ...]]:
        """Grid points in outer-axis-major order."""
        return list(itertools.product(*[a.values() for a in self.axes]))


@dataclass(frozen=True)
class ScanResult:
    grid: ScanGrid
    metric: str
    rows: tuple[tuple[float, ...], ...]

    @property
    def column_names(self) -> list[str]:
        return [a.name for a in self.grid.axes] + ["fidelity", "infidelity", "log10_infidelity"]

    def fidelities(self) -> np.ndarray:
        k = len(self.grid.axes)
        return np.array([r[k] for r in self.rows])


def build_schedule(context: ScanContext) -> Schedule:
    if isinstance(context.gate, TwoQubitGateSpec):
        return build_two_qubit(context.gate, context.protocol, omega_m=context.omega_m)
    if context.encoded:
        return build_encoded(context.gate, context.protocol, omega_m=context.omega_m)
    return build_single_qubit(context.gate, context.protocol, omega_m=context.omega_m)


def noise_for(context: ScanContext, schedule: Schedule, gamma: float) -> LindbladSpec:
    if gamma == 0.0:
        return NO_NOISE
    if schedule.system == "bare3":
        return three_level_noise(gamma)
    from . import dfs

    n_qubits = 3 if schedule.system == "dfs1" else 6
    return dfs.encoded_noise(n_qubits, gamma, dephasing=context.dephasing)


def _point_parameters(context: ScanContext, axis_names, values):
    params = {"epsilon": context.epsilon, "delta": context.delta,
              "gamma_rate": context.gamma_rate}
    for name, v in zip(axis_names, values):
        params[name] = float(v)
    return params


def _evaluate_point(task) -> float:
    schedule, context, metric, axis_names, values = task
    try:
        params = _point_parameters(context, axis_names, values)
        err = ErrorModel(epsilon=params["epsilon"], delta=params["delta"])
        noise = noise_for(context, schedule, params["gamma_rate"])
        if metric == "gate_six_state":
            return metrics.gate_fidelity_six_state(schedule, err, noise, step=context.step)
        return metrics.state_fidelity_run(schedule, context.initial, err, noise, step=context.step)
    except Exception as exc:
        coords = dict(zip(axis_names, (float(v) for v in values)))
        raise RuntimeError(f"scan point {coords} failed: {exc}") from exc


def _row(values, fidelity: float) -> tuple[float, ...]:
    infid = max(0.0, 1.0 - fidelity)
    log10 = LOG10_FLOOR if infid <= 10.0**LOG10_FLOOR else float(np.log10(infid))
    return tuple(float(v) for v in values) + (fidelity, infid, log10)


def run_scan(grid: ScanGrid, metric: str = "gate_six_state", jobs: int = 1) -> ScanResult:
    """Evaluate the metric at every grid point.

    Deterministic across runs and across `jobs`: points are independent and
    results are gathered in grid order.  Any point failure aborts the scan
    with that point's coordinates.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; known: {METRICS}")
    context = grid.fixed
    schedule = build_schedule(context)
    if metric == "gate_six_state" and isinstance(context.gate, TwoQubitGateSpec):
        raise ValueError("gate_six_state metric is defined for single-qubit gates")
    points = grid.points()
    axis_names = tuple(a.name for a in grid.axes)
    tasks = [(schedule, context, metric, axis_names, values) for values in points]

    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fids = list(pool.map(_evaluate_point, tasks, chunksize=max(1, len(tasks)//(4*jobs))))
    else:
        fids = [_evaluate_point(t) for t in tasks]

    rows = []
    for values, fid in zip(points, fids):
        if not np.isfinite(fid):
            raise RuntimeError(f"scan point {dict(zip([a.name for a in grid.axes], values))} "
                               f"returned non-finite fidelity")
        rows.append(_row(values, fid))
    return ScanResult(grid=grid, metric=metric, rows=tuple(rows))


def write_csv(result: ScanResult, destination) -> None:
    """UTF-8 CSV: header row, one data row per grid point in grid order,
    floats in scientific notation with 17 significant digits."""
    try:
        with open(destination, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(result.column_names)
            for row in result.rows:
                writer.writerow([format(v, FLOAT_FORMAT) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write scan CSV to {destination}: {exc}") from exc


def read_csv(path) -> tuple[list[str], list[tuple[float, ...]]]:
    """Re-read a scan CSV; values parse back bit-identically as written."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [tuple(float(x) for x in row) for row in reader]
    return header, rows


def to_json_dict(result: ScanResult) -> dict:
    return {
        "axes": [{"name": a.name, "min": a.lo, "max": a.hi, "points": a.points}
                 for a in result.grid.axes],
        "metric": result.metric,
        "columns": result.column_names,
        "rows": [list(r) for r in result.rows],
    }


def write_json(result: ScanResult, destination) -> None:
    try:
        with open(destination, "w", encoding="utf-8") as fh:
            json.dump(to_json_dict(result), fh, indent=1)
    except OSError as exc:
        raise OSError(f"cannot write scan JSON to {destination}: {exc}") from exc


def summarize(result: ScanResult) -> dict:
    fids = result.fidelities()
    k = len(result.grid.axes)
    worst = min(result.rows, key=lambda r: r[k])
    return {
        "points": len(result.rows),
        "min_fidelity": float(fids.min()),
        "max_fidelity": float(fids.max()),
        "fraction_above_99.9%": float(np.mean(fids > 0.999)),
        "worst_point": {a.name: worst[i] for i, a in enumerate(result.grid.axes)},
    }
