"""Statevector simulator for small qubit registers.

Pure functions on immutable values: gates and circuits are frozen
dataclasses, and every operation returns a fresh ``StateVector``. The
in-place pairwise amplitude updates live in :mod:`qlstm_forecast.kernels`;
no dense 2^n x 2^n matrix is ever built here.

Basis-ordering contract: qubit k corresponds to bit k of the amplitude
index, so qubit 0 is the least significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityError, ShapeError

MAX_QUBITS = 24

ROTATION_GATES = frozenset({"RX", "RY", "RZ"})
GATE_KINDS = frozenset({"H", "RX", "RY", "RZ", "CNOT"})


@dataclass(frozen=True)
class GateOp:
    """One gate: H, RX, RY, RZ (with angle) or CNOT (with control)."""

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.target < 0:
            raise IndexError(f"negative target qubit {self.target}")
        if (self.angle is not None) != (self.kind in ROTATION_GATES):
            raise ValueError(f"{self.kind} gate: angle must be present exactly "
                             "for rotation gates")
        if (self.control is not None) != (self.kind == "CNOT"):
            raise ValueError(f"{self.kind} gate: control qubit only valid for CNOT")
        if self.control is not None and (self.control < 0 or self.control == self.target):
            raise IndexError(f"invalid control qubit {self.control} "
                             f"for target {self.target}")


def h(target: int) -> GateOp:
    return GateOp("H", target)


def rx(target: int, angle: float) -> GateOp:
    return GateOp("RX", target, angle=angle)


def ry(target: int, angle: float) -> GateOp:
    return GateOp("RY", target, angle=angle)


def rz(target: int, angle: float) -> GateOp:
    return GateOp("RZ", target, angle=angle)


def cnot(control: int, target: int) -> GateOp:
    return GateOp("CNOT", target, control=control)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed register size."""

    n_qubits: int
    ops: tuple[GateOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ShapeError(f"circuit needs at least 1 qubit, got {self.n_qubits}")
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            _check_indices(op, self.n_qubits)


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over ``2**n_qubits`` basis states (unit norm)."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if len(self.amplitudes) != (1 << self.n_qubits):
            raise ShapeError(
                f"{self.n_qubits}-qubit state needs {1 << self.n_qubits} "
                f"amplitudes, got {len(self.amplitudes)}")


def _check_indices(gate: GateOp, n_qubits: int) -> None:
    if gate.target >= n_qubits:
        raise IndexError(f"target qubit {gate.target} out of range for "
                         f"{n_qubits} qubits")
    if gate.control is not None and gate.control >= n_qubits:
        raise IndexError(f"control qubit {gate.control} out of range for "
                         f"{n_qubits} qubits")


def encode_ops(ops) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Pack gates into the flat int/float arrays the kernels consume."""
    n = len(ops)
    kinds = np.empty(n, dtype=np.int64)
    targets = np.empty(n, dtype=np.int64)
    controls = np.zeros(n, dtype=np.int64)
    angles = np.zeros(n)
    for k, op in enumerate(ops):
        kinds[k] = kernels.GATE_CODES[op.kind]
        targets[k] = op.target
        if op.control is not None:
            controls[k] = op.control
        if op.angle is not None:
            angles[k] = op.angle
    return kinds, targets, controls, angles


def init_zero(n_qubits: int) -> StateVector:
    """The all-zeros register |0…0⟩."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    amp = np.zeros(1 << n_qubits, dtype=np.complex128)
    amp[0] = 1.0
    return StateVector(n_qubits, amp)


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Apply one gate, returning the new state."""
    _check_indices(gate, state.n_qubits)
    amp = state.amplitudes.copy()
    kinds, targets, controls, angles = encode_ops((gate,))
    kernels.run_ops_inplace(amp, state.n_qubits, kinds, targets, controls, angles)
    return StateVector(state.n_qubits, amp)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply all ops in order, returning the new state."""
    if circuit.n_qubits != state.n_qubits:
        raise ShapeError(f"circuit has {circuit.n_qubits} qubits, "
                         f"state has {state.n_qubits}")
    amp = state.amplitudes.copy()
    if circuit.ops:
        kinds, targets, controls, angles = encode_ops(circuit.ops)
        kernels.run_ops_inplace(amp, state.n_qubits, kinds, targets, controls, angles)
    return StateVector(state.n_qubits, amp)


def expectation_z(state: StateVector, qubit: int) -> float:
    """Exact Pauli-Z expectation of one qubit, in [-1, 1]."""
    if not 0 <= qubit < state.n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.n_qubits} qubits")
    return kernels.expect_z(state.amplitudes, qubit)
