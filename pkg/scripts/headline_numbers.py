#!/usr/bin/env python3
"""Print the headline simulation numbers in one table: the gate fidelities at
the reference decoherence rates, the error-scaling slopes, and the encoded
fidelities.  Runs in a couple of minutes; the entangling-gate line dominates.
"""

import numpy as np

from holsim import dfs, dynamics, metrics
from holsim.dynamics import three_level_noise
from holsim.metrics import error_scaling_order, gate_fidelity_six_state, state_fidelity_run
from holsim.model import NO_ERROR, TwoQubitGateSpec, named_gate
from holsim.pulses import DCNHQC, NHQC, build_dcnhqc, build_encoded, build_two_qubit


def main() -> None:
    noise = three_level_noise(5e-4)
    sched_h, sched_s = build_dcnhqc(named_gate("H")), build_dcnhqc(named_gate("S"))
    print(f"F_H   (Gamma=5e-4)        = {state_fidelity_run(sched_h, '0', noise=noise):.4f}")
    print(f"F_S   (Gamma=5e-4)        = {state_fidelity_run(sched_s, '+', noise=noise):.4f}")
    print(f"F^G_H (Gamma=5e-4)        = {gate_fidelity_six_state(sched_h, noise=noise):.4f}")
    print(f"F^G_S (Gamma=5e-4)        = {gate_fidelity_six_state(sched_s, noise=noise):.4f}")

    grid = np.logspace(np.log10(3e-3), np.log10(3e-2), 9)
    print(f"plain-loop error order    = {error_scaling_order(NHQC, np.pi/2, grid):.3f}")
    print(f"corrected error order     = {error_scaling_order(DCNHQC, np.pi/2, grid):.3f}")

    enc_h = build_encoded(named_gate("H"), DCNHQC)
    f_enc = state_fidelity_run(enc_h, "0", noise=dfs.encoded_noise(3, 2e-4))
    print(f"encoded F_H (Gamma=2e-4)  = {f_enc:.4f}")

    spec = TwoQubitGateSpec.from_varphi(eta=np.pi/4, varphi=0.0)
    schedule = build_two_qubit(spec, DCNHQC)
    enc = dfs.two_qubit_encoding()
    initial = (enc.basis_vector("00") + enc.basis_vector("10"))/np.sqrt(2)
    target = (enc.basis_vector("00") + enc.basis_vector("01")
              - enc.basis_vector("10") + enc.basis_vector("11"))/2.0
    final = dynamics.lindblad_final_states(
        schedule, NO_ERROR, dfs.encoded_noise(6, 2e-4),
        [np.outer(initial, initial.conj())])[0]
    print(f"F_C (Gamma=2e-4)          = {metrics.state_fidelity(final, target):.4f}")


if __name__ == "__main__":
    main()
