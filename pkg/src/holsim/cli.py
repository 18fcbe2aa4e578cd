"""Command-line entry point: single-gate runs, parameter scans, figure bundles.

Every command is deterministic: identical configuration produces identical
output files.  Flags may also be supplied through a JSON config file
(--config, kebab-case keys matching the flag names); explicit flags override
file values.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from math import pi
from pathlib import Path

import click
import numpy as np

from . import dfs, dynamics, figures, metrics, scans
from .dynamics import DEFAULT_STEP, NO_NOISE, SimulationError, three_level_noise
from .model import (ErrorModel, GateSpec, TwoQubitGateSpec, named_gate,
                    two_qubit_gate_six_dim)
from .pulses import (DCNHQC, NHQC, PROTOCOLS, build_encoded, build_single_qubit,
                     build_two_qubit)

DEFAULT_INITIALS = {"H": "0", "S": "+"}


def _fail(message: str) -> "click.ClickException":
    exc = click.ClickException(message)
    exc.exit_code = 1
    return exc


def domain_errors(fn):
    """Map simulator errors to exit code 1 with a clean message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, SimulationError, OSError, RuntimeError) as exc:
            raise _fail(str(exc))

    return wrapper


def merge_config(ctx: click.Context, config_path) -> None:
    """Fill parameters from a JSON config file unless set on the command line."""
    if not config_path:
        return
    try:
        with open(config_path, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _fail(f"cannot read config {config_path}: {exc}")
    if not isinstance(config, dict):
        raise _fail(f"config {config_path} must hold a JSON object")
    known = {p.name for p in ctx.command.params}
    for key, value in config.items():
        name = key.replace("-", "_")
        if name not in known:
            raise _fail(f"config {config_path}: unknown key {key!r}")
        if ctx.get_parameter_source(name) != click.core.ParameterSource.COMMANDLINE:
            ctx.params[name] = value


def _gate_spec(params) -> GateSpec:
    if params["gate"]:
        base = named_gate(params["gate"])
        theta = base.theta if params["theta"] is None else params["theta"]
        phi = base.phi if params["phi"] is None else params["phi"]
        gamma_g = base.gamma_g if params["gamma_g"] is None else params["gamma_g"]
        phi0 = base.phi0 if params["phi0"] is None else params["phi0"]
        return GateSpec(theta=theta, phi=phi, gamma_g=gamma_g, phi0=phi0)
    if params["theta"] is None or params["gamma_g"] is None:
        raise ValueError("specify --gate or both --theta and --gamma-g")
    return GateSpec(theta=params["theta"], phi=params["phi"] or 0.0,
                    gamma_g=params["gamma_g"], phi0=params["phi0"] or 0.0)


def _two_qubit_spec(params) -> TwoQubitGateSpec:
    if params["varphi3"] is not None or params["varphi4"] is not None:
        return TwoQubitGateSpec(eta=params["eta"],
                                varphi3=params["varphi3"] or 0.0,
                                varphi4=pi if params["varphi4"] is None else params["varphi4"])
    return TwoQubitGateSpec.from_varphi(eta=params["eta"], varphi=params["varphi"] or 0.0)


def _noise_for(schedule, gamma: float, dephasing: str):
    if gamma == 0.0:
        return NO_NOISE
    if schedule.system == "bare3":
        return three_level_noise(gamma)
    return dfs.encoded_noise(3 if schedule.system == "dfs1" else 6, gamma, dephasing)


def gate_options(fn):
    opts = [
        click.option("--config", type=click.Path(), default=None,
                     help="JSON file with default flag values."),
        click.option("--protocol", type=click.Choice(PROTOCOLS), default=DCNHQC,
                     show_default=True),
        click.option("--gate", type=click.Choice(["H", "S"], case_sensitive=False),
                     default=None, help="Named gate shortcut."),
        click.option("--theta", type=float, default=None),
        click.option("--phi", type=float, default=None),
        click.option("--gamma-g", type=float, default=None),
        click.option("--phi0", type=float, default=None),
        click.option("--two-qubit", is_flag=True, default=False),
        click.option("--eta", type=float, default=pi/4, show_default=True),
        click.option("--varphi", type=float, default=None),
        click.option("--varphi3", type=float, default=None),
        click.option("--varphi4", type=float, default=None),
        click.option("--encoded", is_flag=True, default=False,
                     help="Run on the subspace-encoded register."),
        click.option("--epsilon", type=float, default=0.0, show_default=True),
        click.option("--delta", type=float, default=0.0, show_default=True),
        click.option("--gamma-rate", type=float, default=0.0, show_default=True),
        click.option("--dephasing", type=click.Choice(["collective", "independent"]),
                     default="collective", show_default=True),
        click.option("--omega-m", type=float, default=1.0, show_default=True),
        click.option("--step", type=float, default=DEFAULT_STEP, show_default=True),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
def main() -> None:
    """Holonomic-gate simulator: gate runs, robustness scans, figure bundles."""


def _report_metadata(params, schedule) -> dict:
    return {
        "protocol": params["protocol"],
        "system": schedule.system,
        "epsilon": params["epsilon"],
        "delta": params["delta"],
        "gamma_rate": params["gamma_rate"],
    }


def _emit_reports(reports, destination) -> None:
    if destination:
        with open(destination, "w", encoding="utf-8") as fh:
            json.dump([json.loads(r.to_json()) for r in reports], fh, indent=1)
        click.echo(f"reports -> {destination}")


@main.command("gate")
@gate_options
@click.option("--initial", type=click.Choice(metrics.CARDINAL_LABELS), default=None,
              help="Initial cardinal state for the state fidelity.")
@click.option("--samples", type=int, default=400, show_default=True)
@click.option("--trajectory", type=click.Path(), default=None,
              help="Write the bright-state Bloch trajectory CSV here.")
@click.option("--json-output", type=click.Path(), default=None,
              help="Write the fidelity reports as JSON rows.")
@click.pass_context
@domain_errors
def cmd_gate(ctx, **params) -> None:
    """Simulate one gate and print its fidelity report."""
    merge_config(ctx, params["config"])
    params = ctx.params
    err = ErrorModel(epsilon=params["epsilon"], delta=params["delta"])

    if params["two_qubit"]:
        spec = _two_qubit_spec(params)
        schedule = build_two_qubit(spec, params["protocol"], omega_m=params["omega_m"])
        enc = dfs.two_qubit_encoding()
        initial = (enc.basis_vector("00") + enc.basis_vector("10"))/np.sqrt(2)
        u6 = two_qubit_gate_six_dim(spec)
        vecs = [enc.basis_vector(lbl) for lbl in enc.labels]
        target = sum(u6[i, j]*vecs[i]*np.vdot(vecs[j], initial)
                     for i in range(6) for j in range(6))
        noise = _noise_for(schedule, params["gamma_rate"], params["dephasing"])
        final = dynamics.lindblad_final_states(schedule, err, noise,
                                               [np.outer(initial, initial.conj())],
                                               step=params["step"])[0]
        fid = metrics.state_fidelity(final, target)
        leak = dfs.leakage(dynamics.propagate_unitary(schedule, err), enc)
        click.echo(f"state_fidelity = {fid:.6f}")
        click.echo(f"leakage = {leak:.3e}")
        meta = _report_metadata(params, schedule) | {"eta": spec.eta, "varphi": spec.varphi}
        _emit_reports([metrics.FidelityReport(value=fid, kind="state", metadata=meta)],
                      params["json_output"])
        return

    spec = _gate_spec(params)
    schedule = (build_encoded(spec, params["protocol"], omega_m=params["omega_m"])
                if params["encoded"]
                else build_single_qubit(spec, params["protocol"], omega_m=params["omega_m"]))
    noise = _noise_for(schedule, params["gamma_rate"], params["dephasing"])
    initial = params["initial"] or DEFAULT_INITIALS.get(params["gate"] or "", "0")
    state_fid = metrics.state_fidelity_run(schedule, initial, err, noise, step=params["step"])
    gate_fid = metrics.gate_fidelity_six_state(schedule, err, noise, step=params["step"])
    click.echo(f"state_fidelity({initial!r}) = {state_fid:.6f}")
    click.echo(f"gate_fidelity_six_state = {gate_fid:.6f}")
    meta = _report_metadata(params, schedule) | {
        "theta": spec.theta, "phi": spec.phi, "gamma_g": spec.gamma_g,
        "initial": initial}
    _emit_reports([
        metrics.FidelityReport(value=state_fid, kind="state", metadata=meta),
        metrics.FidelityReport(value=gate_fid, kind="gate_six_state", metadata=meta),
    ], params["json_output"])
    if params["trajectory"]:
        traj = dynamics.trace_bright_state(schedule, err, samples=params["samples"])
        traj.write_csv(params["trajectory"])
        click.echo(f"trajectory -> {params['trajectory']}")


def _parse_axis(text: str) -> scans.ScanAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError(f"axis spec {text!r} must look like name:min:max:points")
    name, lo, hi, points = parts
    return scans.ScanAxis(name=name, lo=float(lo), hi=float(hi), points=int(points))


@main.command("scan")
@gate_options
@click.option("--axis", "axes", multiple=True, required=True,
              help="Axis spec name:min:max:points (repeat for a 2D grid).")
@click.option("--metric", type=click.Choice(scans.METRICS), default="gate_six_state",
              show_default=True)
@click.option("--initial", type=click.Choice(metrics.CARDINAL_LABELS), default=None)
@click.option("--output", type=click.Path(), default="scan.csv", show_default=True)
@click.option("--json-output", type=click.Path(), default=None,
              help="Optional JSON mirror of the CSV.")
@click.option("--jobs", type=int, default=None,
              help="Parallel workers; default: available parallelism.")
@click.pass_context
@domain_errors
def cmd_scan(ctx, **params) -> None:
    """Run a 1D or 2D robustness scan and write its CSV."""
    merge_config(ctx, params["config"])
    params = ctx.params
    axes = tuple(_parse_axis(a) for a in params["axes"])
    gate = _two_qubit_spec(params) if params["two_qubit"] else _gate_spec(params)
    initial = params["initial"] or DEFAULT_INITIALS.get(params["gate"] or "", "+")
    context = scans.ScanContext(
        gate=gate, protocol=params["protocol"], encoded=params["encoded"],
        epsilon=params["epsilon"], delta=params["delta"], gamma_rate=params["gamma_rate"],
        dephasing=params["dephasing"], omega_m=params["omega_m"],
        initial=initial, step=params["step"])
    grid = scans.ScanGrid(axes=axes, fixed=context)
    jobs = params["jobs"] if params["jobs"] is not None else (os.cpu_count() or 1)
    result = scans.run_scan(grid, metric=params["metric"], jobs=jobs)
    scans.write_csv(result, params["output"])
    if params["json_output"]:
        scans.write_json(result, params["json_output"])
    summary = scans.summarize(result)
    click.echo(f"rows = {summary['points']}")
    click.echo(f"fidelity min = {summary['min_fidelity']:.6f}"
               f" max = {summary['max_fidelity']:.6f}")
    click.echo(f"fraction above 99.9% = {summary['fraction_above_99.9%']:.4f}")
    click.echo(f"worst point = {summary['worst_point']}")
    click.echo(f"csv -> {params['output']}")


@main.command("figure")
@click.argument("name", type=click.Choice(figures.figure_names()))
@click.argument("outdir", type=click.Path())
@click.option("--points", type=int, default=41, show_default=True,
              help="Grid points per scan axis.")
@click.option("--samples", type=int, default=400, show_default=True,
              help="Time samples for dynamics traces.")
@click.option("--jobs", type=int, default=None)
@click.option("--step", type=float, default=DEFAULT_STEP, show_default=True)
@domain_errors
def cmd_figure(name, outdir, points, samples, jobs, step) -> None:
    """Emit the CSV bundle and manifest for a named figure."""
    jobs = jobs if jobs is not None else (os.cpu_count() or 1)
    manifest = figures.emit_figure(name, outdir, points=points, samples=samples,
                                   jobs=jobs, step=step)
    click.echo(f"manifest -> {manifest}")


if __name__ == "__main__":
    main()
