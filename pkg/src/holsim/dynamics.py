"""Closed- and open-system propagation of pulse schedules.

Unitary propagation uses exact per-segment matrix exponentials (segments are
piecewise-constant; non-square envelopes are sliced into >= 1000 constant
pieces).  Open-system propagation integrates the Lindblad master equation

    drho/dt = i [rho, H] + sum_n Gamma_n (s_n rho s_n^dag - {s_n^dag s_n, rho}/2)

with classic fixed-step fourth-order Runge-Kutta (step <= 1e-3 / Omega_m) plus
a half-step Richardson error check per segment.  For a constant generator the
RK4 update is a fixed polynomial in the Liouvillian, so small systems
(dim <= 16) apply it through the vectorized superoperator; larger systems
step the density matrix directly.  The two paths are the same method and are
cross-checked in tests.  The integrator is deliberately independent of the
matrix-exponential path so each validates the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

from . import linalg, model
from .linalg import Array
from .model import ErrorModel, NO_ERROR
from .pulses import BARE3, DFS1, DFS2, SQUARE, SIN_SQUARED, Schedule

DEFAULT_STEP = 1e-3
ENVELOPE_SLICES = 1000
SUPEROP_DIM_LIMIT = 16
RICHARDSON_FACTOR = 15.0  # 2^order - 1 for RK4


class SimulationError(RuntimeError):
    """An integration failed to meet its accuracy contract."""


@dataclass(frozen=True)
class LindbladSpec:
    """Collapse operators and their decoherence rates (units of Omega_m)."""

    collapse_ops: tuple[Array, ...]
    rates: tuple[float, ...]

    def __post_init__(self):
        if len(self.collapse_ops) != len(self.rates):
            raise ValueError("collapse_ops and rates must have equal length")
        for r in self.rates:
            if not (np.isfinite(r) and r >= 0):
                raise ValueError(f"rates must be finite and nonnegative, got {r}")
        dims = {op.shape for op in self.collapse_ops}
        if len(dims) > 1:
            raise ValueError(f"collapse operators have mixed shapes: {dims}")

    @property
    def dim(self) -> int | None:
        return self.collapse_ops[0].shape[0] if self.collapse_ops else None

    def active(self) -> list[tuple[Array, float]]:
        return [(op, r) for op, r in zip(self.collapse_ops, self.rates) if r > 0]


NO_NOISE = LindbladSpec(collapse_ops=(), rates=())


def three_level_noise(gamma: float) -> LindbladSpec:
    """Decay of both qubit states into |a> plus dephasing of each transition,
    all at the same rate."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    s1 = np.zeros((3, 3), dtype=complex); s1[2, 0] = 1.0   # |a><0|
    s2 = np.zeros((3, 3), dtype=complex); s2[2, 1] = 1.0   # |a><1|
    s3 = np.diag([0.5, 0.0, -0.5]).astype(complex)          # (|0><0| - |a><a|)/2
    s4 = np.diag([0.0, 0.5, -0.5]).astype(complex)          # (|1><1| - |a><a|)/2
    return LindbladSpec(collapse_ops=(s1, s2, s3, s4), rates=(gamma,)*4)


def validate_density_matrix(rho: Array, name: str = "rho",
                            herm_tol: float = 1e-9, trace_tol: float = 1e-9,
                            eig_floor: float = -1e-8) -> None:
    """Enforce the density-matrix invariants: Hermitian, unit trace, positive."""
    r = linalg.as_operator(rho, name)
    herm = np.linalg.norm(r - linalg.dagger(r))
    if herm > herm_tol:
        raise SimulationError(f"{name} not Hermitian: ||rho - rho^dag|| = {herm:.3e}")
    tr = abs(np.trace(r) - 1.0)
    if tr > trace_tol:
        raise SimulationError(f"{name} trace deviates from 1 by {tr:.3e}")
    lo = float(np.linalg.eigvalsh(0.5*(r + linalg.dagger(r))).min())
    if lo <= eig_floor:
        raise SimulationError(f"{name} has negative eigenvalue {lo:.3e}")


# --------------------------------------------------------------------------
# schedule -> piecewise-constant drive


def _envelope_profile(envelope: str, t: Array, duration: float) -> Array:
    if envelope == SIN_SQUARED:
        return np.sin(np.pi*t/duration)**2
    raise ValueError(f"unknown envelope {envelope!r}")


def _drive_pieces(schedule: Schedule) -> list[tuple[int, float, float, float]]:
    """(segment index, amplitude, phase, duration) for each constant piece."""
    pieces = []
    for k, seg in enumerate(schedule.segments):
        if seg.envelope == SQUARE:
            pieces.append((k, seg.area/seg.duration, seg.phase, seg.duration))
        else:
            n = ENVELOPE_SLICES
            dt = seg.duration/n
            mids = (np.arange(n) + 0.5)*dt
            profile = _envelope_profile(seg.envelope, mids, seg.duration)
            areas = profile*(seg.area/profile.sum())  # exact total area
            pieces.extend((k, a/dt, seg.phase, dt) for a in areas)
    return pieces


def _detuning_projector(schedule: Schedule) -> Array:
    if schedule.system == BARE3:
        return model.aux_projector()
    from . import dfs

    if schedule.system == DFS1:
        return dfs.single_qubit_encoding().projector
    return dfs.two_qubit_encoding().projector


def _piece_hamiltonian(schedule: Schedule, amplitude: float, phase: float,
                       err: ErrorModel) -> Array:
    if schedule.system == BARE3:
        h = model.drive_hamiltonian(schedule.spec, amplitude, phase)
    else:
        from . import dfs

        if schedule.system == DFS1:
            h = dfs.logical_drive_hamiltonian_1(schedule.spec, amplitude, phase)
        else:
            h = dfs.logical_drive_hamiltonian_2(schedule.spec, amplitude, phase)
    if err.epsilon == 0.0 and err.delta == 0.0:
        return h
    return model.apply_error(h, err, schedule.omega_m, _detuning_projector(schedule))


# --------------------------------------------------------------------------
# closed-system propagation


def propagate_unitary(schedule: Schedule, err: ErrorModel = NO_ERROR) -> Array:
    """Ordered product of exact per-piece exponentials exp(-i H dt)."""
    u = np.eye(schedule.dim, dtype=complex)
    for _, amplitude, phase, duration in _drive_pieces(schedule):
        h = _piece_hamiltonian(schedule, amplitude, phase, err)
        u = linalg.matrix_exp(-1j*h*duration) @ u
    return u


# --------------------------------------------------------------------------
# open-system propagation


def liouvillian(h: Array, noise: LindbladSpec) -> Array:
    """Vectorized generator, row-major convention vec(A rho B) = (A kron B^T) vec(rho)."""
    d = h.shape[0]
    eye = np.eye(d)
    lv = -1j*(np.kron(h, eye) - np.kron(eye, h.T))
    for op, rate in noise.active():
        opd_op = linalg.dagger(op) @ op
        lv = lv + rate*(np.kron(op, op.conj())
                        - 0.5*(np.kron(opd_op, eye) + np.kron(eye, opd_op.T)))
    return lv


def _rk4_step_matrix(lv: Array, h: float) -> Array:
    """One fixed-step RK4 update as a matrix: I + hL + ... + (hL)^4/24."""
    m = np.eye(lv.shape[0], dtype=complex)
    term = np.eye(lv.shape[0], dtype=complex)
    for k in (1, 2, 3, 4):
        term = (h/k)*(lv @ term)
        m = m + term
    return m


def _direct_rhs(h: Array, noise: LindbladSpec):
    """Master-equation right-hand side as four dense matrix products:
    drho = E rho + rho E^dag + sum_n (s_n rho s_n^dag), with the jump sum
    evaluated through rate-scaled stacked operators and E = -iH - sum s^dag s / 2."""
    active = noise.active()
    if not active:

        def rhs(rho):
            return 1j*(rho @ h - h @ rho)

        return rhs

    n, d = len(active), h.shape[0]
    k_stack = np.concatenate([np.sqrt(r)*op for op, r in active], axis=0)
    k_dag_stack = np.concatenate([np.sqrt(r)*linalg.dagger(op) for op, r in active], axis=0)
    drift = -1j*h - 0.5*sum(r*(linalg.dagger(op) @ op) for op, r in active)
    drift_dag = linalg.dagger(drift)

    def rhs(rho):
        jumps = (k_stack @ rho).reshape(n, d, d).transpose(1, 0, 2).reshape(d, n*d)
        return drift @ rho + rho @ drift_dag + jumps @ k_dag_stack

    return rhs


def _rk4_run(rhs, rho: Array, h: float, n: int) -> Array:
    for _ in range(n):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5*h*k1)
        k3 = rhs(rho + 0.5*h*k2)
        k4 = rhs(rho + h*k3)
        rho = rho + (h/6.0)*(k1 + 2.0*k2 + 2.0*k3 + k4)
    return rho


@dataclass(frozen=True)
class LindbladResult:
    """Time-sampled master-equation solution.  Sample times are snapped to
    integration-step boundaries."""

    times: Array
    states: list[Array]


def _check_noise_dim(schedule: Schedule, noise: LindbladSpec) -> None:
    if noise.dim is not None and noise.dim != schedule.dim:
        raise ValueError(f"noise operators have dim {noise.dim}, schedule has dim {schedule.dim}")


def _piece_grid(schedule: Schedule, step: float):
    """Per-piece integration setup plus cumulative step offsets."""
    if not (np.isfinite(step) and 0 < step <= DEFAULT_STEP):
        raise ValueError(f"step must lie in (0, {DEFAULT_STEP}]")
    pieces = _drive_pieces(schedule)
    grid = []
    offset = 0
    t0 = 0.0
    for k, amplitude, phase, duration in pieces:
        n = max(1, ceil(duration/step))
        grid.append((k, amplitude, phase, duration, n, duration/n, offset, t0))
        offset += n
        t0 += duration
    return grid, offset


def _sample_indices(total_steps: int, samples: int) -> np.ndarray:
    if samples < 2:
        raise ValueError("samples must be at least 2")
    return np.unique(np.rint(np.linspace(0, total_steps, samples)).astype(int))


def lindblad_evolve(schedule: Schedule, err: ErrorModel, noise: LindbladSpec,
                    rho0: Array, samples: int = 2, step: float = DEFAULT_STEP,
                    check: bool = True, check_tol: float = 1e-8,
                    validate: bool = True) -> LindbladResult:
    """Integrate the master equation across the schedule.

    Returns ~`samples` states at step-aligned times including t = 0 and the
    final time.  With all rates zero this reduces to unitary conjugation.
    Raises SimulationError naming the offending segment if the half-step
    Richardson estimate exceeds `check_tol`, or if a sampled state violates
    the density-matrix invariants.
    """
    rho = linalg.as_operator(rho0, "rho0")
    if rho.shape[0] != schedule.dim:
        raise ValueError(f"rho0 dim {rho.shape[0]} != schedule dim {schedule.dim}")
    validate_density_matrix(rho, "rho0")
    _check_noise_dim(schedule, noise)

    grid, total_steps = _piece_grid(schedule, step)
    wanted = set(int(i) for i in _sample_indices(total_steps, samples))
    use_superop = schedule.dim <= SUPEROP_DIM_LIMIT
    d = schedule.dim

    times: list[float] = []
    states: list[Array] = []

    def record(t: float, rho_now: Array) -> None:
        if validate:
            validate_density_matrix(rho_now, f"rho(t={t:.6f})")
        times.append(t)
        states.append(rho_now.copy())

    if 0 in wanted:
        record(0.0, rho)

    for k, amplitude, phase, duration, n, h, offset, t0 in grid:
        hmat = _piece_hamiltonian(schedule, amplitude, phase, err)
        inner = sorted(i for i in wanted if offset < i <= offset + n)
        if use_superop:
            lv = liouvillian(hmat, noise)
            m = _rk4_step_matrix(lv, h)
            start_vec = rho.reshape(-1)
            vec, g = start_vec, offset
            for i in inner:
                vec = np.linalg.matrix_power(m, i - g) @ vec
                g = i
                record(t0 + (i - offset)*h, vec.reshape(d, d))
            if g < offset + n:
                vec = np.linalg.matrix_power(m, offset + n - g) @ vec
            if check:
                half = np.linalg.matrix_power(_rk4_step_matrix(lv, 0.5*h), 2*n) @ start_vec
                est = float(np.abs(vec - half).max())/RICHARDSON_FACTOR
                if est > check_tol:
                    raise SimulationError(
                        f"segment {k}: RK4 step error estimate {est:.3e} exceeds {check_tol:.1e}")
            rho = vec.reshape(d, d)
        else:
            rhs = _direct_rhs(hmat, noise)
            start = rho
            current, g = start, offset
            for i in inner:
                current = _rk4_run(rhs, current, h, i - g)
                g = i
                record(t0 + (i - offset)*h, current)
            if g < offset + n:
                current = _rk4_run(rhs, current, h, offset + n - g)
            if check:
                half = _rk4_run(rhs, start, 0.5*h, 2*n)
                est = float(np.abs(current - half).max())/RICHARDSON_FACTOR
                if est > check_tol:
                    raise SimulationError(
                        f"segment {k}: RK4 step error estimate {est:.3e} exceeds {check_tol:.1e}")
            rho = current

    return LindbladResult(times=np.asarray(times), states=states)


def lindblad_final_states(schedule: Schedule, err: ErrorModel, noise: LindbladSpec,
                          rho_list, step: float = DEFAULT_STEP,
                          check: bool = True, check_tol: float = 1e-8) -> list[Array]:
    """Final density matrices for a batch of initial states (no sampling).

    Small systems propagate the whole batch through shared per-segment RK4
    maps; larger systems fall back to one integration per state.
    """
    rhos = [linalg.as_operator(r, "rho0") for r in rho_list]
    for r in rhos:
        if r.shape[0] != schedule.dim:
            raise ValueError("initial state dimension mismatch")
    _check_noise_dim(schedule, noise)

    if schedule.dim > SUPEROP_DIM_LIMIT:
        return [lindblad_evolve(schedule, err, noise, r, samples=2, step=step,
                                check=check, check_tol=check_tol, validate=False).states[-1]
                for r in rhos]

    grid, _ = _piece_grid(schedule, step)
    d = schedule.dim
    x = np.stack([r.reshape(-1) for r in rhos], axis=1)
    for k, amplitude, phase, duration, n, h, offset, t0 in grid:
        hmat = _piece_hamiltonian(schedule, amplitude, phase, err)
        m = _rk4_step_matrix(liouvillian(hmat, noise), h)
        x_end = np.linalg.matrix_power(m, n) @ x
        if check:
            m2 = _rk4_step_matrix(liouvillian(hmat, noise), 0.5*h)
            half = np.linalg.matrix_power(m2, 2*n) @ x
            est = float(np.abs(x_end - half).max())/RICHARDSON_FACTOR
            if est > check_tol:
                raise SimulationError(
                    f"segment {k}: RK4 step error estimate {est:.3e} exceeds {check_tol:.1e}")
        x = x_end
    return [x[:, j].reshape(d, d) for j in range(x.shape[1])]


# --------------------------------------------------------------------------
# dressed-frame trajectories


@dataclass(frozen=True)
class Trajectory:
    """Bloch-sphere path of the bright state in the {|b>, |a>} frame."""

    times: Array
    points: Array  # (n, 3)

    def __post_init__(self):
        r2 = np.sum(self.points**2, axis=1)
        if np.any(r2 > 1.0 + 1e-9):
            raise ValueError(f"trajectory leaves the Bloch sphere: max radius^2 {r2.max():.12f}")

    @property
    def closure_gap(self) -> float:
        """Euclidean distance between the final and initial Bloch points."""
        return float(np.linalg.norm(self.points[-1] - self.points[0]))

    def write_csv(self, destination) -> None:
        import csv

        with open(destination, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "x", "y", "z"])
            for t, (x, y, z) in zip(self.times, self.points):
                writer.writerow([format(v, ".17e") for v in (t, x, y, z)])


def trace_bright_state(schedule: Schedule, err: ErrorModel = NO_ERROR,
                       samples: int = 200) -> Trajectory:
    """Evolve |b> under the (possibly erroneous) drive and record its Bloch
    coordinates in the two-level {bright, aux} frame.

    Error-free loops close exactly; amplitude errors open the loop by an
    amount the corrected protocol suppresses to second order in the error.
    """
    if schedule.system != BARE3:
        raise ValueError("bright-state tracing is defined on the bare three-level system")
    if samples < 2:
        raise ValueError("samples must be at least 2")
    frame = model.dressed_frame(schedule.spec)
    bright, aux = frame.bright, frame.aux
    ts = np.linspace(0.0, schedule.total_duration, samples)
    points = np.empty((samples, 3))

    def bloch(psi):
        cb = np.vdot(bright, psi)
        ca = np.vdot(aux, psi)
        cross = np.conj(cb)*ca
        return (2.0*cross.real, 2.0*cross.imag, abs(cb)**2 - abs(ca)**2)

    psi = bright.astype(complex)
    i = 0
    t0 = 0.0
    for _, amplitude, phase, duration in _drive_pieces(schedule):
        hmat = _piece_hamiltonian(schedule, amplitude, phase, err)
        w, v = np.linalg.eigh(hmat)
        coeffs = v.conj().T @ psi
        while i < samples and ts[i] <= t0 + duration + 1e-12:
            tau = ts[i] - t0
            points[i] = bloch(v @ (np.exp(-1j*w*tau)*coeffs))
            i += 1
        psi = v @ (np.exp(-1j*w*duration)*coeffs)
        t0 += duration
    while i < samples:  # guard against float round-off at the last boundary
        points[i] = bloch(psi)
        i += 1
    return Trajectory(times=ts, points=points)
