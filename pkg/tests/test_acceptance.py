"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -v` or `-rA`).

Criterion 5 (decoherence thresholds) is implemented exactly as stated and is
expected to fail by a hair: the faithful noise model reproduces every quoted
fidelity at Gamma = 5e-4 but puts the six-state fidelity at Gamma = 2e-4 at
0.99896, just under the 0.999 bar, and the corrected S gate at the extreme
corner (|eps| = 0.1, Gamma = 0.9e-4) at 0.99893.  See the decisions ledger.
"""

import numpy as np
import pytest

from holsim import dfs, dynamics, linalg, metrics, model
from holsim.dfs import (collective_z_immunity, encoded_noise, leakage, restriction,
                        single_qubit_encoding, two_qubit_encoding)
from holsim.dynamics import (NO_NOISE, lindblad_evolve, lindblad_final_states,
                             propagate_unitary, three_level_noise)
from holsim.metrics import (error_scaling_order, gate_fidelity_six_state,
                            state_fidelity, state_fidelity_run)
from holsim.model import (ErrorModel, GateSpec, NO_ERROR, TwoQubitGateSpec,
                          ideal_gate, ideal_two_qubit_gate, named_gate,
                          two_qubit_gate_six_dim)
from holsim.pulses import (DCNHQC, NHQC, build_dcnhqc, build_encoded, build_nhqc,
                           build_single_qubit, build_two_qubit)
from holsim.scans import ScanAxis, ScanContext, ScanGrid, run_scan

from conftest import random_gate_spec

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex)/np.sqrt(2)


def report(name: str, detail: str) -> None:
    print(f"[ACCEPTANCE] {name}: PASS ({detail})")


@pytest.fixture(scope="module")
def gate_c_run():
    """Shared open-system run of the entangling gate at Gamma = 2e-4 (dim 64)."""
    spec = TwoQubitGateSpec.from_varphi(eta=np.pi/4, varphi=0.0)
    schedule = build_two_qubit(spec, DCNHQC)
    enc = two_qubit_encoding()
    initial = (enc.basis_vector("00") + enc.basis_vector("10"))/np.sqrt(2)
    target = (enc.basis_vector("00") + enc.basis_vector("01")
              - enc.basis_vector("10") + enc.basis_vector("11"))/2.0
    result = lindblad_evolve(schedule, NO_ERROR, encoded_noise(6, 2e-4),
                             np.outer(initial, initial.conj()), samples=40)
    return result, target


def test_criterion_01_holonomy_exactness(rng):
    worst = 0.0
    for _ in range(200):
        spec = random_gate_spec(rng)
        ideal = ideal_gate(spec)
        for builder in (build_nhqc, build_dcnhqc):
            u = propagate_unitary(builder(spec))[0:2, 0:2]
            fid = abs(np.trace(ideal.conj().T @ u))/2
            worst = max(worst, 1.0 - fid)
    assert worst < 1e-8
    report("holonomy exactness", f"worst 1-F = {worst:.2e} over 200 specs x 2 protocols")


def test_criterion_02_analytic_propagator_match():
    worst = 0.0
    for eps in (-0.1, -0.05, 0.0, 0.05, 0.1):
        mu = 1.0 + eps
        for gamma in (np.pi/4, np.pi/2, np.pi):
            spec = GateSpec(theta=0.0, phi=0.0, gamma_g=gamma)
            frame = model.dressed_frame(spec)
            # plain loop, second-order form
            u = propagate_unitary(build_nhqc(spec), ErrorModel(epsilon=eps))
            num = np.vdot(frame.bright, u @ frame.bright)
            ref = np.cos(mu*np.pi/2)**2 + np.sin(mu*np.pi/2)**2*np.exp(1j*gamma)
            worst = max(worst, abs(num - ref))
            # corrected loop, fourth-order form
            u = propagate_unitary(build_dcnhqc(spec), ErrorModel(epsilon=eps))
            num = np.vdot(frame.bright, u @ frame.bright)
            ref = (np.cos(mu*np.pi/2)**4
                   + (np.sin(mu*np.pi/2)**2 + 0.25*np.sin(mu*np.pi)**2)*np.exp(1j*gamma))
            worst = max(worst, abs(num - ref))
    assert worst < 1e-10
    report("analytic propagator match", f"worst coefficient deviation = {worst:.2e}")


def test_criterion_03_error_scaling_orders():
    grid = np.logspace(np.log10(3e-3), np.log10(3e-2), 9)
    slope_plain = error_scaling_order(NHQC, np.pi/2, grid)
    slope_corr = error_scaling_order(DCNHQC, np.pi/2, grid)
    assert abs(slope_plain - 2.0) < 0.1
    assert abs(slope_corr - 4.0) < 0.2
    report("error-scaling orders",
           f"plain slope = {slope_plain:.3f}, corrected slope = {slope_corr:.3f}")


def test_criterion_04_paper_fidelity_numbers():
    noise = three_level_noise(5e-4)
    sched_h = build_dcnhqc(named_gate("H"))
    sched_s = build_dcnhqc(named_gate("S"))
    f_h = state_fidelity_run(sched_h, "0", noise=noise)
    f_s = state_fidelity_run(sched_s, "+", noise=noise)
    fg_h = gate_fidelity_six_state(sched_h, noise=noise)
    fg_s = gate_fidelity_six_state(sched_s, noise=noise)
    assert abs(f_h - 0.9969) < 1e-3, f"F_H = {f_h:.6f}"
    assert abs(f_s - 0.9973) < 1e-3, f"F_S = {f_s:.6f}"
    assert abs(fg_h - 0.9974) < 1e-3, f"F^G_H = {fg_h:.6f}"
    assert abs(fg_s - 0.9974) < 1e-3, f"F^G_S = {fg_s:.6f}"
    report("paper fidelity numbers",
           f"F_H = {f_h:.4f}, F_S = {f_s:.4f}, F^G_H = {fg_h:.4f}, F^G_S = {fg_s:.4f}")


def test_criterion_05_decoherence_thresholds():
    """Implemented exactly as stated; known to fail marginally at the stated
    boundaries (see module docstring and the decisions ledger)."""
    failures = []
    # part A: H and S six-state fidelities above 99.9% for all Gamma <= 2e-4
    for gate in ("H", "S"):
        sched = build_dcnhqc(named_gate(gate))
        for gamma in (0.5e-4, 1.0e-4, 1.5e-4, 2.0e-4):
            fid = gate_fidelity_six_state(sched, noise=three_level_noise(gamma))
            if not fid > 0.999:
                failures.append(f"F^G_{gate}(Gamma={gamma:.1e}) = {fid:.6f} <= 0.999")
    # part B: corrected S gate above 99.9% across the whole strip for
    # Gamma <= 0.9e-4, on the 41x41 grid of the robustness heatmap
    grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 41),
                          ScanAxis("gamma_rate", 0.0, 5e-4, 41)),
                    fixed=ScanContext(gate=named_gate("S"), protocol=DCNHQC))
    result = run_scan(grid)
    for row in result.rows:
        eps, gamma, fid = row[0], row[1], row[2]
        if gamma <= 0.9e-4 and not fid > 0.999:
            failures.append(f"strip point (eps={eps:+.3f}, Gamma={gamma:.2e})"
                            f" fidelity = {fid:.6f} <= 0.999")
    assert not failures, "threshold violations:\n  " + "\n  ".join(failures)
    report("decoherence thresholds", "all points above 99.9%")


def test_criterion_06_lindblad_integrator_properties(gate_c_run):
    # figure-reproduction runs: single-qubit dynamics traces at Gamma = 5e-4
    checked = 0
    for gate, initial in (("H", "0"), ("S", "+")):
        sched = build_dcnhqc(named_gate(gate))
        psi = metrics.embed_qubit_state(sched, metrics.cardinal_state(initial))
        run = lindblad_evolve(sched, NO_ERROR, three_level_noise(5e-4),
                              linalg.projector(psi), samples=200)
        for rho in run.states:
            assert abs(np.trace(rho) - 1.0) < 1e-8
            assert np.linalg.norm(rho - rho.conj().T) < 1e-9
            assert np.linalg.eigvalsh(rho).min() > -1e-8
            checked += 1
    # the 64-dimensional entangling-gate run
    result, _ = gate_c_run
    for rho in result.states:
        assert abs(np.trace(rho) - 1.0) < 1e-8
        assert np.linalg.eigvalsh(0.5*(rho + rho.conj().T)).min() > -1e-8
        checked += 1
    # zero-rate reduction to unitary conjugation, single- and two-qubit
    for sched in (build_dcnhqc(named_gate("H")),
                  build_two_qubit(TwoQubitGateSpec.from_varphi(np.pi/4, 0.0), DCNHQC)):
        dim = sched.dim
        if dim == 3:
            psi = metrics.embed_qubit_state(sched, metrics.cardinal_state("0"))
        else:
            enc = two_qubit_encoding()
            psi = (enc.basis_vector("00") + enc.basis_vector("10"))/np.sqrt(2)
        rho0 = linalg.projector(psi)
        final = lindblad_final_states(sched, NO_ERROR, NO_NOISE, [rho0])[0]
        u = propagate_unitary(sched)
        assert np.abs(final - u @ rho0 @ u.conj().T).max() < 1e-8
    report("lindblad integrator properties",
           f"{checked} samples validated; zero-rate reduction within 1e-8")


def test_criterion_07_dfs_immunity():
    # exact spread over the detuning grid at fixed amplitude error
    sched = build_encoded(named_gate("S"), DCNHQC)
    spreads = [collective_z_immunity(sched, eps, np.linspace(-0.1, 0.1, 5))
               for eps in (0.0, 0.05, 0.1)]
    assert max(spreads) < 1e-10, f"encoded spread {max(spreads):.2e}"
    # encoded heatmap within 0.1% everywhere at zero decoherence
    enc_grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 41),
                              ScanAxis("delta", -0.1, 0.1, 41)),
                        fixed=ScanContext(gate=named_gate("S"), protocol=DCNHQC,
                                          encoded=True))
    enc_result = run_scan(enc_grid)
    enc_worst = 1.0 - enc_result.fidelities().min()
    assert enc_worst < 1e-3, f"encoded worst infidelity {enc_worst:.2e}"
    # the bare gate violates the same bound
    bare_grid = ScanGrid(axes=(ScanAxis("epsilon", -0.1, 0.1, 41),
                               ScanAxis("delta", -0.1, 0.1, 41)),
                         fixed=ScanContext(gate=named_gate("S"), protocol=DCNHQC))
    bare_result = run_scan(bare_grid)
    bare_worst = 1.0 - bare_result.fidelities().min()
    assert bare_worst > 1e-3, f"bare worst infidelity {bare_worst:.2e}"
    report("subspace immunity",
           f"spread = {max(spreads):.1e}, encoded worst = {enc_worst:.2e},"
           f" bare worst = {bare_worst:.2e}")


def test_criterion_08_logical_gates_with_noise(gate_c_run):
    # encoded H gate at Gamma = 2e-4
    sched_h = build_encoded(named_gate("H"), DCNHQC)
    f_h = state_fidelity_run(sched_h, "0", noise=encoded_noise(3, 2e-4))
    assert abs(f_h - 0.9985) < 1e-3, f"encoded F_H = {f_h:.6f}"
    # entangling gate at Gamma = 2e-4 from the shared run
    result, target = gate_c_run
    f_c = state_fidelity(result.states[-1], target)
    assert abs(f_c - 0.9982) < 1e-3, f"F_C = {f_c:.6f}"
    # no leakage out of the encoded subspaces without decoherence
    leaks = [
        leakage(propagate_unitary(build_encoded(named_gate("H"), DCNHQC)),
                single_qubit_encoding()),
        leakage(propagate_unitary(build_encoded(named_gate("S"), DCNHQC)),
                single_qubit_encoding()),
        leakage(propagate_unitary(
            build_two_qubit(TwoQubitGateSpec.from_varphi(np.pi/4, 0.0), DCNHQC)),
            two_qubit_encoding()),
    ]
    assert max(leaks) < 1e-8, f"leakage {max(leaks):.2e}"
    report("logical gates with noise",
           f"encoded F_H = {f_h:.4f}, F_C = {f_c:.4f}, max leakage = {max(leaks):.1e}")


def test_criterion_09_two_qubit_algebra():
    spec = TwoQubitGateSpec.from_varphi(eta=np.pi/4, varphi=0.0)
    product = ideal_two_qubit_gate(spec) @ np.kron(np.eye(2), HADAMARD)
    cnot_cp = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
                       dtype=complex)
    assert np.abs(product - cnot_cp).max() < 1e-12
    worst = 0.0
    for test_spec in (spec, TwoQubitGateSpec(eta=1.1, varphi3=0.7, varphi4=2.0)):
        u = propagate_unitary(build_two_qubit(test_spec, DCNHQC))
        r = restriction(u, two_qubit_encoding())
        worst = max(worst, float(np.abs(r - two_qubit_gate_six_dim(test_spec)).max()))
    assert worst < 1e-8
    report("two-qubit algebra",
           f"CNOTxCP exact; six-dim propagator deviation = {worst:.2e}")
