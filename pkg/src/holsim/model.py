"""Domain types for the driven three-level system and its gate targets.

Basis ordering is fixed as {|0>, |1>, |a>} for the bare system: the two
computational states first, the auxiliary state last.  A holonomic rotation
is specified by the dressed-frame angles (theta, phi), the geometric phase
gamma_g picked up by the bright state over one loop, and the base drive
phase phi0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin

import numpy as np

from . import linalg
from .linalg import Array

AUX_INDEX = 2  # |a> position in the bare three-level basis


def _require_finite(**values) -> None:
    for name, v in values.items():
        if not np.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class GateSpec:
    """Target single-qubit holonomic rotation.

    theta, phi fix the rotation axis (sin th cos ph, -sin th sin ph, cos th);
    gamma_g is the rotation angle; phi0 the overall drive phase of the first
    pulse.  At theta in {0, pi} the axis is +/-z and phi has no effect on the
    gate (the bright/dark projectors absorb it).
    """

    theta: float
    phi: float = 0.0
    gamma_g: float = pi
    phi0: float = 0.0

    def __post_init__(self):
        _require_finite(theta=self.theta, phi=self.phi, gamma_g=self.gamma_g, phi0=self.phi0)
        if not 0.0 <= self.theta <= pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2*pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")
        if not -2*pi < self.gamma_g < 2*pi:
            raise ValueError(f"gamma_g must lie in (-2*pi, 2*pi), got {self.gamma_g}")

    @property
    def axis(self) -> Array:
        """Unit rotation axis on the Bloch sphere."""
        return np.array([sin(self.theta)*cos(self.phi),
                         -sin(self.theta)*sin(self.phi),
                         cos(self.theta)])


@dataclass(frozen=True)
class TwoQubitGateSpec:
    """Target two-qubit holonomic gate on the six-dimensional logical space.

    eta fixes the coupling ratio tan(eta/2) = g1/g2; varphi3 and varphi4 are
    the two drive phases; the gate angle is varphi = varphi3 - varphi4 + pi.
    The loop's geometric phase is fixed at pi, which makes the gate an
    involution on the logical subspace.
    """

    eta: float
    varphi3: float = 0.0
    varphi4: float = pi

    def __post_init__(self):
        _require_finite(eta=self.eta, varphi3=self.varphi3, varphi4=self.varphi4)
        if not 0.0 <= self.eta <= pi:
            raise ValueError(f"eta must lie in [0, pi], got {self.eta}")

    @property
    def varphi(self) -> float:
        return self.varphi3 - self.varphi4 + pi

    @classmethod
    def from_varphi(cls, eta: float, varphi: float) -> "TwoQubitGateSpec":
        """Build a spec realizing a given gate angle, using varphi3 = 0."""
        return cls(eta=eta, varphi3=0.0, varphi4=pi - varphi)


@dataclass(frozen=True)
class ErrorModel:
    """Coherent error channels: fractional amplitude error epsilon (X error)
    and detuning delta in units of the amplitude ceiling (Z error)."""

    epsilon: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        _require_finite(epsilon=self.epsilon, delta=self.delta)


NO_ERROR = ErrorModel()


@dataclass(frozen=True)
class DressedFrame:
    """Bright/dark/auxiliary basis of the driven three-level system."""

    bright: Array
    dark: Array
    aux: Array


def dressed_frame(spec: GateSpec) -> DressedFrame:
    """Dressed basis for a gate spec: the drive couples only bright <-> aux."""
    th, ph = spec.theta, spec.phi
    bright = np.array([sin(th/2), -cos(th/2)*np.exp(1j*ph), 0.0], dtype=complex)
    dark = np.array([-cos(th/2)*np.exp(-1j*ph), -sin(th/2), 0.0], dtype=complex)
    aux = linalg.basis_state(3, AUX_INDEX)
    return DressedFrame(bright=bright, dark=dark, aux=aux)


def axis_generator(theta: float, phi: float) -> Array:
    """Traceless reflection generator for the (theta, phi) rotation axis.

    Sign convention is fixed by the dressed states: the bright state is the
    -1 eigenvector and the dark state the +1 eigenvector, so the projector
    form of the gate and the axis-angle form coincide exactly.
    """
    return np.array([[cos(theta), sin(theta)*np.exp(-1j*phi)],
                     [sin(theta)*np.exp(1j*phi), -cos(theta)]])


def ideal_gate(spec: GateSpec) -> Array:
    """Ideal holonomic gate in the computational basis {|0>, |1>}.

    Returns exp(i gamma/2) * exp(-i (gamma/2) n.sigma), which equals
    |d><d| + e^{i gamma} |b><b| restricted to the qubit subspace.
    """
    g = spec.gamma_g
    gen = axis_generator(spec.theta, spec.phi)
    return np.exp(1j*g/2)*(cos(g/2)*np.eye(2) - 1j*sin(g/2)*gen)


def ideal_gate_dressed_form(spec: GateSpec) -> Array:
    """Same gate built from the dressed projectors (used as a cross-check)."""
    frame = dressed_frame(spec)
    b, d = frame.bright[:2], frame.dark[:2]
    return linalg.projector(d) + np.exp(1j*spec.gamma_g)*linalg.projector(b)


def drive_hamiltonian(spec: GateSpec, omega: float, phase: float) -> Array:
    """Resonant drive coupling the bright state to |a> with overall `phase`.

    In the computational basis this expands into the two physical legs
    Omega_0 e^{-i phi_0} |0><a| + Omega_1 e^{-i phi_1} |1><a| + h.c. with
    tan(theta/2) = Omega_0/Omega_1 and phi = phi_0 - phi_1 + pi.
    The dark state is annihilated.
    """
    if omega < 0:
        raise ValueError(f"drive amplitude must be nonnegative, got {omega}")
    frame = dressed_frame(spec)
    term = omega*np.exp(-1j*phase)*np.outer(frame.bright, frame.aux.conj())
    return term + linalg.dagger(term)


def aux_projector(dim: int = 3, aux_index: int = AUX_INDEX) -> Array:
    """Projector |a><a| receiving the detuning error in the bare system."""
    return linalg.projector(linalg.basis_state(dim, aux_index))


def apply_error(h: Array, err: ErrorModel, omega_m: float = 1.0,
                detuning_projector: Array | None = None) -> Array:
    """Noisy Hamiltonian (1 + eps) H - delta * Omega_m * P.

    P is |a><a| for the bare system or the logical-subspace projector for an
    encoded system; the caller supplies it.  With eps = delta = 0 the input
    is returned unchanged.
    """
    h = linalg.as_operator(h, "hamiltonian")
    if not linalg.is_hermitian(h):
        raise ValueError("apply_error expects a Hermitian hamiltonian")
    if err.epsilon == 0.0 and err.delta == 0.0:
        return h
    out = (1.0 + err.epsilon)*h
    if err.delta != 0.0:
        if detuning_projector is None:
            raise ValueError("detuning error requires a detuning projector")
        p = linalg.as_operator(detuning_projector, "detuning projector")
        out = out - err.delta*omega_m*p
    return out


def ideal_two_qubit_gate(spec: TwoQubitGateSpec) -> Array:
    """Ideal two-qubit gate on the logical basis {|00>, |01>, |10>, |11>}.

    Block-diagonal pair of reflections; squares to the identity.  The phase
    convention follows the exchange Hamiltonian as written, i.e. the upper
    off-diagonal entries carry e^{+i varphi}.
    """
    eta, vp = spec.eta, spec.varphi
    c, s = cos(eta), sin(eta)
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0], u[0, 1] = c, s*np.exp(1j*vp)
    u[1, 0], u[1, 1] = s*np.exp(-1j*vp), -c
    u[2, 2], u[2, 3] = -c, s*np.exp(1j*vp)
    u[3, 2], u[3, 3] = s*np.exp(-1j*vp), c
    return u


def two_qubit_gate_six_dim(spec: TwoQubitGateSpec) -> Array:
    """Ideal evolution on the six-dimensional logical space, ordered
    {|00>, |01>, |A1>, |10>, |11>, |A2>}.

    Each auxiliary state returns with phase -1: the pi-area loop acts as -1
    on its bright/auxiliary doublet, which unitarity of the exchange
    evolution forces (this phase is unobservable for logical states).
    """
    u4 = ideal_two_qubit_gate(spec)
    u = np.zeros((6, 6), dtype=complex)
    u[0:2, 0:2] = u4[0:2, 0:2]
    u[2, 2] = -1.0
    u[3:5, 3:5] = u4[2:4, 2:4]
    u[5, 5] = -1.0
    return u


def named_gate(name: str) -> GateSpec:
    """Gate shortcuts used throughout the simulations."""
    table = {
        "H": GateSpec(theta=pi/4, phi=0.0, gamma_g=pi, phi0=0.0),
        "S": GateSpec(theta=0.0, phi=0.0, gamma_g=pi/2, phi0=0.0),
    }
    try:
        return table[name.upper()]
    except KeyError:
        raise ValueError(f"unknown named gate {name!r}; known: {sorted(table)}") from None
