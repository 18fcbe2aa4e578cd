"""Simulator for dynamically corrected nonadiabatic holonomic quantum gates.

Builds pulse schedules for single-loop and dynamically corrected holonomic
gates, propagates them as unitaries or through the Lindblad master equation,
scores them with state/gate/trace fidelities, and sweeps error and
decoherence parameters into reproducible CSV bundles.
"""

from .dynamics import (LindbladResult, LindbladSpec, NO_NOISE, SimulationError,
                       Trajectory, lindblad_evolve, lindblad_final_states,
                       propagate_unitary, three_level_noise, trace_bright_state)
from .linalg import hermitian_eigenvalues, kron, matrix_exp
from .model import (DressedFrame, ErrorModel, GateSpec, NO_ERROR, TwoQubitGateSpec,
                    apply_error, dressed_frame, drive_hamiltonian, ideal_gate,
                    ideal_two_qubit_gate, named_gate, two_qubit_gate_six_dim)
from .metrics import (FidelityReport, error_scaling_order, gate_fidelity_six_state,
                      state_fidelity, trace_fidelity_dressed,
                      trace_fidelity_dressed_series)
from .pulses import (DCNHQC, NHQC, PulseSegment, Schedule, build_dcnhqc,
                     build_encoded, build_nhqc, build_single_qubit, build_two_qubit)
from .scans import ScanAxis, ScanContext, ScanGrid, ScanResult, run_scan, write_csv

__version__ = "0.1.0"

__all__ = [
    "DCNHQC", "DressedFrame", "ErrorModel", "FidelityReport", "GateSpec",
    "LindbladResult", "LindbladSpec", "NHQC", "NO_ERROR", "NO_NOISE",
    "PulseSegment", "ScanAxis", "ScanContext", "ScanGrid", "ScanResult",
    "Schedule", "SimulationError", "Trajectory", "TwoQubitGateSpec",
    "apply_error", "build_dcnhqc", "build_encoded", "build_nhqc",
    "build_single_qubit", "build_two_qubit", "dressed_frame",
    "drive_hamiltonian", "error_scaling_order", "gate_fidelity_six_state",
    "hermitian_eigenvalues", "ideal_gate", "ideal_two_qubit_gate",
    "kron", "lindblad_evolve", "lindblad_final_states", "matrix_exp",
    "named_gate", "propagate_unitary", "run_scan", "state_fidelity",
    "three_level_noise", "trace_bright_state", "trace_fidelity_dressed",
    "trace_fidelity_dressed_series", "two_qubit_gate_six_dim", "write_csv",
]
