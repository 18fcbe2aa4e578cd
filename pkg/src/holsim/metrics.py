"""Fidelity figures of merit and error-scaling estimation.

Three metrics cover everything the simulations report: the state fidelity
<psi_f| rho |psi_f>, the six-state average gate fidelity over the cardinal
qubit states, and the dressed-basis trace fidelity whose closed forms are

    plain loop:  F  = |1 + cos^2(mu pi/2) e^{-i g} + sin^2(mu pi/2)| / 2
    corrected:   F_c = |1 + sin^2(mu pi/2) + sin^2(mu pi)/4
                        + cos^4(mu pi/2) e^{-i g}| / 2

with mu = 1 + epsilon and g the geometric phase.  Their small-error series
are 1 - eps^2 pi^2 (1 - cos g)/8 and 1 - eps^4 pi^4 (1 - cos g)/32: the
corrected protocol trades second-order for fourth-order sensitivity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import cos, pi, sin

import numpy as np

from . import dynamics, linalg, model
from .dynamics import DEFAULT_STEP, NO_NOISE, LindbladSpec
from .linalg import Array
from .model import ErrorModel, GateSpec, NO_ERROR
from .pulses import BARE3, DCNHQC, DFS1, NHQC, Schedule, build_single_qubit

FIDELITY_SLACK = 1e-9

CARDINAL_LABELS = ("0", "1", "+", "-", "+i", "-i")

_SQRT2 = np.sqrt(2.0)
_CARDINALS = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([1.0, 1.0], dtype=complex)/_SQRT2,
    "-": np.array([1.0, -1.0], dtype=complex)/_SQRT2,
    "+i": np.array([1.0, 1.0j], dtype=complex)/_SQRT2,
    "-i": np.array([1.0, -1.0j], dtype=complex)/_SQRT2,
}


def cardinal_state(label: str) -> Array:
    try:
        return _CARDINALS[label].copy()
    except KeyError:
        raise ValueError(f"unknown cardinal state {label!r}; known: {CARDINAL_LABELS}") from None


@dataclass(frozen=True)
class FidelityReport:
    """A fidelity value plus the parameters that produced it."""

    value: float
    kind: str  # "state" | "gate_six_state" | "trace_dressed"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (-FIDELITY_SLACK <= self.value <= 1.0 + FIDELITY_SLACK):
            raise ValueError(f"fidelity {self.value} outside [0, 1]")

    def to_json(self) -> str:
        return json.dumps({"value": self.value, "kind": self.kind, "metadata": self.metadata})


def _clip_fidelity(value: float, context: str) -> float:
    if not (-FIDELITY_SLACK <= value <= 1.0 + FIDELITY_SLACK):
        raise ValueError(f"{context} produced fidelity {value} outside [0, 1] allowance")
    return min(max(value, 0.0), 1.0)


def state_fidelity(rho: Array, target: Array) -> float:
    """Overlap <target| rho |target> of a density matrix with a pure target."""
    r = linalg.as_operator(rho, "rho")
    t = linalg.as_state(target, "target", normalized=True)
    if t.size != r.shape[0]:
        raise ValueError(f"dimension mismatch: rho {r.shape[0]}, target {t.size}")
    value = np.vdot(t, r @ t)
    if abs(value.imag) > 1e-10:
        raise ValueError(f"fidelity has imaginary part {value.imag:.3e}; rho not Hermitian?")
    return _clip_fidelity(float(value.real), "state_fidelity")


def embed_qubit_state(schedule: Schedule, psi: Array) -> Array:
    """Lift a computational qubit state into the schedule's Hilbert space."""
    psi = linalg.as_state(psi, "qubit state")
    if schedule.system == BARE3:
        full = np.zeros(3, dtype=complex)
        full[:2] = psi
        return full
    if schedule.system == DFS1:
        from . import dfs

        return dfs.encode_qubit_state(psi)
    raise ValueError(f"no qubit embedding for system {schedule.system!r}")


def ideal_target_state(schedule: Schedule, psi: Array) -> Array:
    """Embedded image of a qubit state under the schedule's ideal gate."""
    return embed_qubit_state(schedule, model.ideal_gate(schedule.spec) @ np.asarray(psi, complex))


def gate_fidelity_six_state(schedule: Schedule, err: ErrorModel = NO_ERROR,
                            noise: LindbladSpec = NO_NOISE, step: float = DEFAULT_STEP,
                            check: bool = True) -> float:
    """Average over the six cardinal initial states of the overlap between the
    noisy final density matrix and the ideal gate's target state."""
    if not isinstance(schedule.spec, GateSpec):
        raise ValueError("six-state gate fidelity is defined for single-qubit gates")
    initials = [embed_qubit_state(schedule, cardinal_state(lbl)) for lbl in CARDINAL_LABELS]
    targets = [ideal_target_state(schedule, cardinal_state(lbl)) for lbl in CARDINAL_LABELS]
    rhos = dynamics.lindblad_final_states(
        schedule, err, noise, [linalg.projector(v) for v in initials],
        step=step, check=check)
    return float(np.mean([state_fidelity(r, t) for r, t in zip(rhos, targets)]))


def unitary_six_state_fidelity(schedule: Schedule, err: ErrorModel = NO_ERROR) -> float:
    """Six-state average using the exact piecewise propagator (coherent errors
    only); used for detuning-immunity checks where round-off matters."""
    if not isinstance(schedule.spec, GateSpec):
        raise ValueError("six-state gate fidelity is defined for single-qubit gates")
    u = dynamics.propagate_unitary(schedule, err)
    total = 0.0
    for lbl in CARDINAL_LABELS:
        psi = cardinal_state(lbl)
        init = embed_qubit_state(schedule, psi)
        target = ideal_target_state(schedule, psi)
        total += abs(np.vdot(target, u @ init))**2
    return _clip_fidelity(total/6.0, "unitary_six_state_fidelity")


def state_fidelity_run(schedule: Schedule, initial_label: str, err: ErrorModel = NO_ERROR,
                       noise: LindbladSpec = NO_NOISE, step: float = DEFAULT_STEP,
                       check: bool = True) -> float:
    """State fidelity of one gate run from a cardinal initial state."""
    psi = cardinal_state(initial_label)
    rho0 = linalg.projector(embed_qubit_state(schedule, psi))
    target = ideal_target_state(schedule, psi)
    final = dynamics.lindblad_final_states(schedule, err, noise, [rho0],
                                           step=step, check=check)[0]
    return state_fidelity(final, target)


# --------------------------------------------------------------------------
# dressed-basis trace fidelity


def bright_return_amplitude(protocol: str, gamma_g: float, epsilon: float) -> complex:
    """Closed-form <b|U|b> after one loop under a fractional amplitude error."""
    mu = 1.0 + epsilon
    x = mu*pi/2
    if protocol == NHQC:
        return cos(x)**2 + sin(x)**2*np.exp(1j*gamma_g)
    if protocol == DCNHQC:
        return cos(x)**4 + (sin(x)**2 + 0.25*sin(mu*pi)**2)*np.exp(1j*gamma_g)
    raise ValueError(f"unknown protocol {protocol!r}")


def trace_fidelity_dressed(protocol: str, gamma_g: float, epsilon: float) -> float:
    """Exact dressed-basis trace fidelity |Tr(U^dag U^eps)| / 2."""
    amp = bright_return_amplitude(protocol, gamma_g, epsilon)
    return _clip_fidelity(0.5*abs(1.0 + np.exp(-1j*gamma_g)*amp), "trace_fidelity_dressed")


def trace_fidelity_dressed_series(protocol: str, gamma_g: float, epsilon: float) -> float:
    """Leading-order small-error expansions of the trace fidelity."""
    if protocol == NHQC:
        return 1.0 - epsilon**2*pi**2*(1.0 - cos(gamma_g))/8.0
    if protocol == DCNHQC:
        return 1.0 - epsilon**4*pi**4*(1.0 - cos(gamma_g))/32.0
    raise ValueError(f"unknown protocol {protocol!r}")


def dressed_trace_fidelity_from_unitary(schedule: Schedule, err: ErrorModel) -> float:
    """Trace fidelity computed from the numerically propagated gate, projected
    onto the dressed {bright, dark} basis.  Cross-validates the closed form."""
    if schedule.system != BARE3 or not isinstance(schedule.spec, GateSpec):
        raise ValueError("dressed trace fidelity is defined on the bare three-level system")
    frame = model.dressed_frame(schedule.spec)
    u = dynamics.propagate_unitary(schedule, err)
    ubb = np.vdot(frame.bright, u @ frame.bright)
    udd = np.vdot(frame.dark, u @ frame.dark)
    return _clip_fidelity(0.5*abs(np.exp(-1j*schedule.spec.gamma_g)*ubb + udd),
                          "dressed trace fidelity")


def error_scaling_order(protocol: str, gamma_g: float, eps_grid,
                        omega_m: float = 1.0) -> float:
    """Least-squares slope of log10(1 - F) against log10(eps), F from the
    numerically propagated gate.  ~2 for the plain loop, ~4 when corrected."""
    eps = np.asarray(list(eps_grid), dtype=float)
    if eps.size < 5:
        raise ValueError("eps_grid needs at least 5 points")
    if np.any(eps <= 0):
        raise ValueError("eps_grid must be strictly positive")
    if eps.max()/eps.min() < 10.0 - 1e-9:
        raise ValueError("eps_grid must span at least one decade")
    spec = GateSpec(theta=0.0, phi=0.0, gamma_g=gamma_g, phi0=0.0)
    schedule = build_single_qubit(spec, protocol, omega_m=omega_m)
    infid = np.array([1.0 - dressed_trace_fidelity_from_unitary(schedule, ErrorModel(epsilon=e))
                      for e in eps])
    if np.any(infid < 1e-14):
        raise ValueError("infidelity below the 1e-14 floor; scaling fit is degenerate")
    slope, _ = np.polyfit(np.log10(eps), np.log10(infid), 1)
    return float(slope)
