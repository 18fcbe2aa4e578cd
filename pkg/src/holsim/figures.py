"""CSV bundles backing the reproduction figures.

Each bundle is a directory of CSV files plus a `manifest.json` describing,
per file, the column schema and how to plot it (`plot_kind` one of
bloch_path, line, staircase, heatmap, population_traces).  The rendering
layer consumes these manifests; the bundles themselves are plain data and
carry everything needed to redraw the figure.
"""

from __future__ import annotations

import csv
import json
from math import pi
from pathlib import Path

import numpy as np

from . import dfs, dynamics, metrics, scans
from .dynamics import DEFAULT_STEP, three_level_noise
from .model import ErrorModel, GateSpec, NO_ERROR, TwoQubitGateSpec, named_gate
from .pulses import DCNHQC, NHQC, build_dcnhqc, build_encoded, build_single_qubit, build_two_qubit
from .scans import ScanAxis, ScanContext, ScanGrid, run_scan, write_csv

FLOAT_FORMAT = scans.FLOAT_FORMAT


def _write_rows(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(float(v), FLOAT_FORMAT) for v in row])


def _scan_file(outdir: Path, name: str, grid: ScanGrid, jobs: int) -> dict:
    result = run_scan(grid, metric="gate_six_state", jobs=jobs)
    write_csv(result, outdir/name)
    return {"shape": list(grid.shape), "columns": result.column_names}


def _fig1(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    spec = named_gate("S")  # geometric phase pi/2, as in the path illustration
    files = []
    for protocol in (NHQC, DCNHQC):
        for eps in (0.0, 0.1):
            schedule = build_single_qubit(spec, protocol)
            traj = dynamics.trace_bright_state(schedule, ErrorModel(epsilon=eps), samples=samples)
            name = f"bloch_{protocol}_eps{eps:g}.csv"
            traj.write_csv(outdir/name)
            files.append({
                "path": name, "plot_kind": "bloch_path",
                "columns": ["t", "x", "y", "z"],
                "series": f"{protocol.upper()} eps={eps:g}",
            })
    return {
        "figure": "fig1",
        "title": "Bright-state evolution paths with and without amplitude error",
        "files": files,
    }


def _dynamics_trace(outdir: Path, name: str, schedule, initial_label: str,
                    gamma: float, samples: int, step: float) -> dict:
    psi = metrics.cardinal_state(initial_label)
    rho0 = np.outer(metrics.embed_qubit_state(schedule, psi),
                    metrics.embed_qubit_state(schedule, psi).conj())
    target = metrics.ideal_target_state(schedule, psi)
    noise = three_level_noise(gamma)
    result = dynamics.lindblad_evolve(schedule, NO_ERROR, noise, rho0,
                                      samples=samples, step=step)
    rows = []
    for t, rho in zip(result.times, result.states):
        pops = np.real(np.diag(rho))
        fid = metrics.state_fidelity(rho, target)
        rows.append([t, pops[0], pops[1], pops[2], fid])
    _write_rows(outdir/name, ["t", "pop_0", "pop_1", "pop_a", "fidelity"], rows)
    return {"path": name, "plot_kind": "population_traces",
            "columns": ["t", "pop_0", "pop_1", "pop_a", "fidelity"],
            "x": "t", "ys": ["pop_0", "pop_1", "pop_a", "fidelity"]}


def _fig3ab(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    gamma = 5e-4
    entries = []
    for gate, initial in (("H", "0"), ("S", "+")):
        schedule = build_dcnhqc(named_gate(gate))
        entry = _dynamics_trace(outdir, f"dcnhqc_{gate.lower()}_dynamics.csv",
                                schedule, initial, gamma, samples, step)
        entry["series"] = f"{gate} gate"
        entries.append(entry)
    return {
        "figure": "fig3ab",
        "title": "State population and fidelity dynamics of the corrected H and S gates",
        "notes": [f"uniform decoherence rate {gamma:g}"],
        "files": entries,
    }


def _fig3c(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    schedule = build_dcnhqc(named_gate("S"))
    rows = []
    t = 0.0
    for seg in schedule.segments:
        amp = seg.area/seg.duration
        rows.append([t, amp, seg.phase])
        t += seg.duration
        rows.append([t, amp, seg.phase])
    name = "s_gate_pulse.csv"
    _write_rows(outdir/name, ["t", "omega", "phi0"], rows)
    return {
        "figure": "fig3c",
        "title": "Drive amplitude and phase staircase for the corrected S gate",
        "files": [{"path": name, "plot_kind": "staircase",
                   "columns": ["t", "omega", "phi0"], "x": "t", "ys": ["omega", "phi0"]}],
    }


def _fig3d(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    spec = named_gate("S")
    files = []
    for protocol in (NHQC, DCNHQC):
        grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, points),),
                        fixed=ScanContext(gate=spec, protocol=protocol, step=step))
        info = _scan_file(outdir, f"{protocol}_s_epsilon_scan.csv", grid, jobs)
        files.append({"path": f"{protocol}_s_epsilon_scan.csv", "plot_kind": "line",
                      "columns": info["columns"], "x": "epsilon", "y": "log10_infidelity",
                      "series": protocol.upper()})
    return {
        "figure": "fig3d",
        "title": "log10 gate infidelity of the S gate against amplitude error",
        "notes": ["two-loop composite and optimal-control comparison series are"
                  " out of scope: their pulse constructions are not specified here"],
        "files": files,
    }


def _fig4(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    spec = named_gate("S")
    files = []
    for protocol in (DCNHQC, NHQC):
        grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, points),
                              ScanAxis("gamma_rate", 0.0, 5e-4, points)),
                        fixed=ScanContext(gate=spec, protocol=protocol, step=step))
        name = f"{protocol}_s_heatmap.csv"
        info = _scan_file(outdir, name, grid, jobs)
        files.append({"path": name, "plot_kind": "heatmap", "columns": info["columns"],
                      "x": "epsilon", "y": "gamma_rate", "value": "infidelity",
                      "series": protocol.upper(), "contours": [1e-3],
                      "grid_shape": info["shape"]})
    return {
        "figure": "fig4",
        "title": "S-gate robustness against amplitude error and decoherence",
        "notes": ["two-loop composite and optimal-control panels are out of scope"],
        "files": files,
    }


def _fig6(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    spec = named_gate("S")
    files = []
    for encoded, name in ((False, "bare_s_heatmap.csv"), (True, "encoded_s_heatmap.csv")):
        grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, points),
                              ScanAxis("delta", -0.1, 0.1, points)),
                        fixed=ScanContext(gate=spec, protocol=DCNHQC, encoded=encoded, step=step))
        info = _scan_file(outdir, name, grid, jobs)
        files.append({"path": name, "plot_kind": "heatmap", "columns": info["columns"],
                      "x": "epsilon", "y": "delta", "value": "infidelity",
                      "series": "encoded" if encoded else "bare", "contours": [1e-3],
                      "grid_shape": info["shape"]})
    return {
        "figure": "fig6",
        "title": "S-gate robustness against amplitude and detuning errors,"
                 " bare versus subspace-encoded",
        "encoding": dfs.single_qubit_encoding().to_json_map(),
        "files": files,
    }


def _fig7(outdir: Path, points: int, samples: int, jobs: int, step: float) -> dict:
    gamma = 2e-4
    spec = TwoQubitGateSpec.from_varphi(eta=pi/4, varphi=0.0)
    schedule = build_two_qubit(spec, DCNHQC)
    enc = dfs.two_qubit_encoding()
    plus = (enc.basis_vector("00") + enc.basis_vector("10"))/np.sqrt(2)
    rho0 = np.outer(plus, plus.conj())
    target = (enc.basis_vector("00") + enc.basis_vector("01")
              - enc.basis_vector("10") + enc.basis_vector("11"))/2.0
    noise = dfs.encoded_noise(6, gamma)
    result = dynamics.lindblad_evolve(schedule, NO_ERROR, noise, rho0,
                                      samples=samples, step=step)
    labels = ("00", "01", "10", "11", "A1", "A2")
    indices = [enc.indices[enc.labels.index(lbl)] for lbl in labels]
    rows = []
    for t, rho in zip(result.times, result.states):
        pops = [float(np.real(rho[i, i])) for i in indices]
        rows.append([t, *pops, metrics.state_fidelity(rho, target)])
    name = "gate_c_dynamics.csv"
    header = ["t", "pop_00", "pop_01", "pop_10", "pop_11", "pop_a1", "pop_a2", "fidelity"]
    _write_rows(outdir/name, header, rows)
    return {
        "figure": "fig7",
        "title": "Logical-state dynamics of the entangling gate",
        "notes": [f"uniform decoherence rate {gamma:g}; initial state"
                  " (|0>_L + |1>_L)|0>_L / sqrt(2)"],
        "encoding": enc.to_json_map(),
        "files": [{"path": name, "plot_kind": "population_traces", "columns": header,
                   "x": "t", "ys": header[1:]}],
    }


_FIGURES = {
    "fig1": _fig1,
    "fig3ab": _fig3ab,
    "fig3c": _fig3c,
    "fig3d": _fig3d,
    "fig4": _fig4,
    "fig6": _fig6,
    "fig7": _fig7,
}


def figure_names() -> tuple[str, ...]:
    return tuple(_FIGURES)


def emit_figure(name: str, outdir, points: int = 41, samples: int = 400,
                jobs: int = 1, step: float = DEFAULT_STEP) -> Path:
    """Write the named figure's CSV bundle and manifest; returns the manifest path."""
    if name not in _FIGURES:
        raise ValueError(f"unknown figure {name!r}; known: {sorted(_FIGURES)}")
    target = Path(outdir)/name
    target.mkdir(parents=True, exist_ok=True)
    manifest = _FIGURES[name](target, points, samples, jobs, step)
    manifest_path = target/"manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
    return manifest_path
