import itertools
import math

import numpy as np
import pytest

from qlstm_forecast import statevector as sv
from qlstm_forecast.errors import CapacityError, ShapeError

import dense_ref

SQRT1_2 = 1 / math.sqrt(2)


def test_init_zero_two_qubits():
    state = sv.init_zero(2)
    assert np.array_equal(state.amplitudes, [1, 0, 0, 0])


def test_init_zero_one_qubit():
    state = sv.init_zero(1)
    assert np.array_equal(state.amplitudes, [1, 0])


def test_init_zero_capacity_bounds():
    with pytest.raises(CapacityError):
        sv.init_zero(25)
    with pytest.raises(CapacityError):
        sv.init_zero(0)


def test_hadamard_on_zero():
    state = sv.apply_gate(sv.init_zero(1), sv.h(0))
    assert np.allclose(state.amplitudes, [SQRT1_2, SQRT1_2], atol=1e-12)


def test_ry_pi_flips_zero_to_one():
    state = sv.apply_gate(sv.init_zero(1), sv.ry(0, math.pi))
    assert np.allclose(state.amplitudes, [0, 1], atol=1e-12)


def test_cnot_truth_table_all_basis_states():
    # qubit 0 is the LSB of the basis index; check every control/target pairing
    for control, target in [(0, 1), (1, 0)]:
        for basis in range(4):
            amp = np.zeros(4, dtype=np.complex128)
            amp[basis] = 1.0
            state = sv.StateVector(2, amp)
            out = sv.apply_gate(state, sv.cnot(control, target))
            expected = basis ^ (1 << target) if (basis >> control) & 1 else basis
            assert out.amplitudes[expected] == 1.0
            assert np.count_nonzero(out.amplitudes) == 1


def test_cnot_example_from_basis_index_one():
    # |q0=1, q1=0> is basis index 1; CNOT(control=0, target=1) maps it to index 3
    amp = np.zeros(4, dtype=np.complex128)
    amp[1] = 1.0
    out = sv.apply_gate(sv.StateVector(2, amp), sv.cnot(0, 1))
    assert out.amplitudes[3] == 1.0


def test_gate_validation():
    with pytest.raises(ValueError):
        sv.GateOp("H", 0, angle=1.0)          # angle on a non-rotation gate
    with pytest.raises(ValueError):
        sv.GateOp("RY", 0)                    # rotation without angle
    with pytest.raises(ValueError):
        sv.GateOp("RX", 0, control=1, angle=0.5)
    with pytest.raises(IndexError):
        sv.GateOp("CNOT", 1, control=1)       # control == target
    with pytest.raises(IndexError):
        sv.apply_gate(sv.init_zero(1), sv.h(1))
    with pytest.raises(IndexError):
        sv.Circuit(2, (sv.cnot(2, 0),))


def test_empty_circuit_is_identity():
    state = sv.apply_gate(sv.init_zero(2), sv.h(0))
    out = sv.apply_circuit(state, sv.Circuit(2))
    assert np.array_equal(out.amplitudes, state.amplitudes)


def test_double_hadamard_is_identity():
    circuit = sv.Circuit(1, (sv.h(0), sv.h(0)))
    out = sv.apply_circuit(sv.init_zero(1), circuit)
    assert np.allclose(out.amplitudes, [1, 0], atol=1e-12)


def test_apply_circuit_qubit_count_mismatch():
    with pytest.raises(ShapeError):
        sv.apply_circuit(sv.init_zero(2), sv.Circuit(3, (sv.h(0),)))


def test_apply_circuit_matches_per_gate_composition():
    rng = np.random.default_rng(11)
    circuit = dense_ref.random_circuit(rng, 3, 20)
    whole = sv.apply_circuit(sv.init_zero(3), circuit)
    stepwise = sv.init_zero(3)
    for op in circuit.ops:
        stepwise = sv.apply_gate(stepwise, op)
    assert np.allclose(whole.amplitudes, stepwise.amplitudes, atol=1e-14)


def test_apply_circuit_matches_dense_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        circuit = dense_ref.random_circuit(rng, n, int(rng.integers(1, 31)))
        got = sv.apply_circuit(sv.init_zero(n), circuit).amplitudes
        want = dense_ref.apply_dense(circuit, sv.init_zero(n).amplitudes)
        assert np.abs(got - want).max() < 1e-12


def test_norm_preserved_on_random_circuits():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        circuit = dense_ref.random_circuit(rng, n, 25)
        out = sv.apply_circuit(sv.init_zero(n), circuit)
        assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-10


def test_apply_gate_does_not_mutate_input():
    state = sv.init_zero(2)
    before = state.amplitudes.copy()
    sv.apply_gate(state, sv.h(0))
    assert np.array_equal(state.amplitudes, before)


def test_expectation_z_basis_states():
    assert sv.expectation_z(sv.init_zero(1), 0) == 1.0
    one = sv.apply_gate(sv.init_zero(1), sv.ry(0, math.pi))
    assert sv.expectation_z(one, 0) == pytest.approx(-1.0, abs=1e-12)


def test_expectation_z_equator():
    plus = sv.apply_gate(sv.init_zero(1), sv.h(0))
    assert abs(sv.expectation_z(plus, 0)) < 1e-12


def test_expectation_z_matches_dense_and_stays_bounded():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        circuit = dense_ref.random_circuit(rng, n, 15)
        state = sv.apply_circuit(sv.init_zero(n), circuit)
        for q in range(n):
            got = sv.expectation_z(state, q)
            assert -1.0 <= got <= 1.0
            assert got == pytest.approx(dense_ref.expect_z_dense(state.amplitudes, q),
                                        abs=1e-12)


def test_expectation_z_index_error():
    with pytest.raises(IndexError):
        sv.expectation_z(sv.init_zero(2), 2)


def test_basis_ordering_contract():
    # RY(pi) on qubit k flips exactly bit k of the basis index
    for n, k in itertools.product([2, 3], [0, 1]):
        out = sv.apply_gate(sv.init_zero(n), sv.ry(k, math.pi))
        assert abs(out.amplitudes[1 << k]) == pytest.approx(1.0, abs=1e-12)
