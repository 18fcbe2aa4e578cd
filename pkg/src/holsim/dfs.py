"""Decoherence-free-subspace machinery for the exchange-coupled qubit register.

One logical qubit lives in the single-excitation subspace of three physical
qubits, S1 = span{|100>, |010>, |001>}, with |0>_L = |100>, |1>_L = |010| and
|A1>_L = |001> as the auxiliary level.  Two logical qubits live in the
six-dimensional subspace S2 of six physical qubits.  Collective dephasing is
proportional to the identity on both subspaces, which is what makes the
encoding immune to the collective Z error.

Physical qubit ordering in bitstrings: |q1 q2 qA1> and |q1 q2 qA1 q3 q4 qA2>,
first qubit most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin

import numpy as np

from . import linalg, model
from .dynamics import LindbladSpec
from .linalg import Array
from .model import GateSpec, TwoQubitGateSpec

S_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)   # |1><0|
S_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
EXCITED = np.diag([0.0, 1.0]).astype(complex)        # |1><1|


def qubit_operator(n_qubits: int, position: int, op: Array) -> Array:
    """Embed a single-qubit operator at 1-indexed `position` in an n-qubit register."""
    if not 1 <= position <= n_qubits:
        raise ValueError(f"qubit position {position} out of range 1..{n_qubits}")
    mats = [np.eye(2, dtype=complex)]*n_qubits
    mats[position - 1] = op
    return linalg.kron_all(*mats)


def number_operator(n_qubits: int) -> Array:
    """Total excitation number, conserved by the exchange Hamiltonians."""
    return sum(qubit_operator(n_qubits, j, EXCITED) for j in range(1, n_qubits + 1))


def bitstring_index(bits: str) -> int:
    return int(bits, 2)


def bitstring_state(bits: str) -> Array:
    return linalg.basis_state(2**len(bits), bitstring_index(bits))


@dataclass(frozen=True)
class LogicalEncoding:
    """Map from logical labels to physical basis bitstrings, plus the
    projector onto the encoded subspace."""

    n_physical: int
    labels: tuple[str, ...]
    bitstrings: tuple[str, ...]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(bitstring_index(b) for b in self.bitstrings)

    @property
    def dim(self) -> int:
        return 2**self.n_physical

    @property
    def projector(self) -> Array:
        p = np.zeros((self.dim, self.dim), dtype=complex)
        for i in self.indices:
            p[i, i] = 1.0
        return p

    def basis_vector(self, label: str) -> Array:
        return bitstring_state(self.bitstrings[self.labels.index(label)])

    def to_json_map(self) -> dict[str, str]:
        return dict(zip(self.labels, self.bitstrings))


def single_qubit_encoding() -> LogicalEncoding:
    return LogicalEncoding(n_physical=3,
                           labels=("0", "1", "A1"),
                           bitstrings=("100", "010", "001"))


def two_qubit_encoding() -> LogicalEncoding:
    """Six-dimensional encoding, labels ordered to match the block structure
    {|00>, |01>, |A1>} + {|10>, |11>, |A2>} of the logical Hamiltonian."""
    return LogicalEncoding(n_physical=6,
                           labels=("00", "01", "A1", "10", "11", "A2"),
                           bitstrings=("100100", "100010", "110000",
                                       "010100", "010010", "000110"))


TWO_QUBIT_LOGICAL_LABELS = ("00", "01", "10", "11")


def _not_gate(n: int, position: int) -> Array:
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    return qubit_operator(n, position, x)


def _cnot_gate(n: int, control: int, target: int) -> Array:
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    return (qubit_operator(n, control, p0)
            + qubit_operator(n, control, p1) @ qubit_operator(n, target, x))


def encoding_circuit() -> Array:
    """Two-step encoder: NOT on qubit 2, then CNOT with qubit 1 as control."""
    return _cnot_gate(3, control=1, target=2) @ _not_gate(3, position=2)


def encode_single(a: complex, b: complex) -> Array:
    """Encode a|1>_1 + b|0>_1 into a|100> + b|010> via the encoding circuit."""
    if abs(abs(a)**2 + abs(b)**2 - 1.0) > 1e-10:
        raise ValueError("encode_single requires |a|^2 + |b|^2 = 1")
    psi1 = np.array([b, a], dtype=complex)  # qubit 1 state, |0>=(1,0)
    zero = np.array([1.0, 0.0], dtype=complex)
    reg = np.kron(np.kron(psi1, zero), zero)
    return encoding_circuit() @ reg


def encode_qubit_state(psi: Array) -> Array:
    """Encode a computational qubit state (amplitudes on |0>, |1>) into S1."""
    psi = linalg.as_state(psi, "qubit state")
    return encode_single(psi[0], psi[1])


def decode_single(state: Array) -> tuple[complex, complex]:
    """Invert the encoding circuit and read back (a, b); rejects states that
    are not in the image of the encoder."""
    state = linalg.as_state(state, "encoded state")
    reg = linalg.dagger(encoding_circuit()) @ state
    a = reg[bitstring_index("100")]
    b = reg[bitstring_index("000")]
    residual = np.linalg.norm(reg)**2 - (abs(a)**2 + abs(b)**2)
    if residual > 1e-10:
        raise ValueError(f"state is not a valid encoding (residual norm {residual:.3e})")
    return complex(a), complex(b)


def physical_hamiltonian_1(j1: float, j2: float, varphi1: float, varphi2: float) -> Array:
    """Exchange coupling of qubits 1 and 2 to the auxiliary qubit (dim 8):
    J1 e^{-i varphi1} S1+ SA1- + J2 e^{-i varphi2} S2+ SA1- + h.c."""
    if j1 < 0 or j2 < 0:
        raise ValueError("coupling strengths must be nonnegative")
    term = (j1*np.exp(-1j*varphi1)*qubit_operator(3, 1, S_PLUS) @ qubit_operator(3, 3, S_MINUS)
            + j2*np.exp(-1j*varphi2)*qubit_operator(3, 2, S_PLUS) @ qubit_operator(3, 3, S_MINUS))
    return term + linalg.dagger(term)


def physical_hamiltonian_2(g1: float, g2: float, varphi3: float, varphi4: float) -> Array:
    """Exchange coupling of qubit 2 to qubits 3 and 4 in the six-qubit
    register (dim 64): g1 e^{-i varphi3} S2+ S3- + g2 e^{-i varphi4} S2+ S4- + h.c.

    Physical positions: (q1, q2, qA1, q3, q4, qA2) = 1..6.
    """
    if g1 < 0 or g2 < 0:
        raise ValueError("coupling strengths must be nonnegative")
    term = (g1*np.exp(-1j*varphi3)*qubit_operator(6, 2, S_PLUS) @ qubit_operator(6, 4, S_MINUS)
            + g2*np.exp(-1j*varphi4)*qubit_operator(6, 2, S_PLUS) @ qubit_operator(6, 5, S_MINUS))
    return term + linalg.dagger(term)


def logical_drive_hamiltonian_1(spec: GateSpec, amplitude: float, phase: float) -> Array:
    """Exchange Hamiltonian whose S1 restriction equals the bare drive
    Hamiltonian for `spec` at the given overall phase."""
    j1 = amplitude*sin(spec.theta/2)
    j2 = amplitude*cos(spec.theta/2)
    return physical_hamiltonian_1(j1, j2, phase, phase - spec.phi - pi)


def logical_drive_hamiltonian_2(spec: TwoQubitGateSpec, amplitude: float, offset: float) -> Array:
    """Six-qubit exchange Hamiltonian with the common phase offset added to
    both drives; sqrt(g1^2 + g2^2) = amplitude."""
    g1 = amplitude*sin(spec.eta/2)
    g2 = amplitude*cos(spec.eta/2)
    return physical_hamiltonian_2(g1, g2, spec.varphi3 + offset, spec.varphi4 + offset)


def restriction(op: Array, encoding: LogicalEncoding) -> Array:
    """Restrict a physical-space operator to the encoded basis, in the
    encoding's label order."""
    op = linalg.as_operator(op)
    idx = list(encoding.indices)
    return op[np.ix_(idx, idx)]


def leakage(propagator: Array, encoding: LogicalEncoding) -> float:
    """Worst-case population escaping the encoded subspace, over logical
    basis states: 1 - min_psi ||P U psi||^2."""
    u = linalg.as_operator(propagator, "propagator")
    if u.shape[0] != encoding.dim:
        raise ValueError(f"propagator dim {u.shape[0]} != encoding dim {encoding.dim}")
    idx = list(encoding.indices)
    worst = min(float(np.sum(np.abs(u[idx, i])**2)) for i in idx)
    return 1.0 - worst


def encoded_noise(n_qubits: int, gamma: float, dephasing: str = "collective") -> LindbladSpec:
    """Noise model for encoded simulations: per-qubit decay at rate gamma
    plus dephasing at rate gamma.

    Dephasing is collective by default (one operator sum_j sigma_z_j / 2),
    which the subspace is immune to; "independent" gives one sigma_z_j / 2
    channel per qubit instead.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    ops = [qubit_operator(n_qubits, j, S_MINUS) for j in range(1, n_qubits + 1)]
    if dephasing == "collective":
        ops.append(0.5*sum(qubit_operator(n_qubits, j, SIGMA_Z) for j in range(1, n_qubits + 1)))
    elif dephasing == "independent":
        ops.extend(0.5*qubit_operator(n_qubits, j, SIGMA_Z) for j in range(1, n_qubits + 1))
    else:
        raise ValueError(f"unknown dephasing model {dephasing!r}")
    return LindbladSpec(collapse_ops=tuple(ops), rates=(gamma,)*len(ops))


def collective_z_immunity(schedule, epsilon: float, delta_grid) -> float:
    """Spread (max - min) of the six-state gate fidelity over a detuning grid
    at fixed amplitude error.

    This is a coherent-error check, so it uses the exact piecewise unitary
    propagator.  For encoded schedules the collective-Z term is proportional
    to the identity on the subspace and the spread vanishes to round-off.
    """
    from . import metrics

    delta_grid = list(delta_grid)
    if len(delta_grid) == 0 or not all(np.isfinite(d) for d in delta_grid):
        raise ValueError("delta_grid must be a nonempty finite sequence")
    fids = [metrics.unitary_six_state_fidelity(
                schedule, model.ErrorModel(epsilon=epsilon, delta=float(d)))
            for d in delta_grid]
    return max(fids) - min(fids)
