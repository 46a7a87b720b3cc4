"""Differentiable variational quantum circuit layer.

A VQC maps a classical vector (one component per qubit) to the vector of
per-qubit Pauli-Z expectations: encoding gates load the input, then each
variational layer applies a trainable (RX, RY, RZ) triple per qubit followed
by a ring of CNOTs. Gradients for both the trainable angles and the inputs
use the exact parameter-shift rule, (E(theta + pi/2) - E(theta - pi/2)) / 2,
which is exact for rotation gates.

Encodings:
  angle_arctan  per qubit k: H, RY(arctan v_k), RZ(arctan v_k^2); bounded
                angles for unbounded inputs (the default).
  angle_linear  per qubit k: RY(v_k); handy for closed-form checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from . import statevector as sv
from .errors import NumericError, ShapeError

ENCODINGS = ("angle_arctan", "angle_linear")

_SHIFT = math.pi / 2


@dataclass(frozen=True)
class VqcDescriptor:
    """Architecture of one VQC: register size, depth, and input encoding."""

    n_qubits: int
    n_layers: int
    encoding: str = "angle_arctan"

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ShapeError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.n_layers < 0:
            raise ShapeError(f"n_layers must be >= 0, got {self.n_layers}")
        if self.encoding not in ENCODINGS:
            raise ValueError(f"unknown encoding {self.encoding!r}")


@dataclass
class VqcParams:
    """Trainable rotation angles, shape [n_layers, n_qubits, 3]."""

    angles: np.ndarray

    @property
    def n_layers(self) -> int:
        return self.angles.shape[0]


def random_params(descriptor: VqcDescriptor, rng: np.random.Generator,
                  spread: float = math.pi / 8) -> VqcParams:
    """Uniform angles in [-spread, spread]."""
    return VqcParams(rng.uniform(-spread, spread,
                                 (descriptor.n_layers, descriptor.n_qubits, 3)))


def zero_params(descriptor: VqcDescriptor) -> VqcParams:
    return VqcParams(np.zeros((descriptor.n_layers, descriptor.n_qubits, 3)))


def _check_input(descriptor: VqcDescriptor, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (descriptor.n_qubits,):
        raise ShapeError(f"input length {v.shape} does not match "
                         f"{descriptor.n_qubits} qubits")
    if not np.all(np.isfinite(v)):
        raise NumericError("non-finite VQC input")
    return v


def _check_params(descriptor: VqcDescriptor, params: VqcParams) -> np.ndarray:
    angles = np.asarray(params.angles, dtype=float)
    want = (descriptor.n_layers, descriptor.n_qubits, 3)
    if angles.shape != want:
        raise ShapeError(f"params shape {angles.shape} does not match "
                         f"descriptor {want}")
    return angles


def build_encoding(descriptor: VqcDescriptor, v) -> sv.Circuit:
    """The input-loading circuit for ``v`` (no variational gates)."""
    v = _check_input(descriptor, v)
    ops = []
    for k in range(descriptor.n_qubits):
        if descriptor.encoding == "angle_arctan":
            ops += [sv.h(k),
                    sv.ry(k, math.atan(v[k])),
                    sv.rz(k, math.atan(v[k] * v[k]))]
        else:
            ops.append(sv.ry(k, v[k]))
    return sv.Circuit(descriptor.n_qubits, tuple(ops))


def build_circuit(descriptor: VqcDescriptor, params: VqcParams, v) -> sv.Circuit:
    """Full circuit: encoding, then per layer rotations and the CNOT ring."""
    angles = _check_params(descriptor, params)
    ops = list(build_encoding(descriptor, v).ops)
    n = descriptor.n_qubits
    for layer in range(descriptor.n_layers):
        for q in range(n):
            ops += [sv.rx(q, angles[layer, q, 0]),
                    sv.ry(q, angles[layer, q, 1]),
                    sv.rz(q, angles[layer, q, 2])]
        if n >= 2:
            ops += [sv.cnot(k, (k + 1) % n) for k in range(n)]
    return sv.Circuit(n, tuple(ops))


@dataclass(frozen=True)
class _Template:
    """Structure of the full circuit with angle slots left at zero.

    Rebuilding the gate sequence for every parameter-shift evaluation would
    dominate runtime; instead the (kinds, targets, controls) arrays are fixed
    per descriptor and each evaluation only fills the angle vector.
    """

    kinds: np.ndarray
    targets: np.ndarray
    controls: np.ndarray
    n_ops: int
    enc_ry: np.ndarray          # angle-vector position of RY(v_k) per qubit
    enc_rz: np.ndarray | None   # RZ(arctan v_k^2) positions (arctan encoding)
    var_pos: np.ndarray         # [n_layers, n_qubits, 3] rotation positions


@lru_cache(maxsize=None)
def _template(descriptor: VqcDescriptor) -> _Template:
    n, arctan = descriptor.n_qubits, descriptor.encoding == "angle_arctan"
    ops: list[sv.GateOp] = []
    enc_ry, enc_rz = [], []
    for k in range(n):
        if arctan:
            ops.append(sv.h(k))
            enc_ry.append(len(ops))
            ops.append(sv.ry(k, 0.0))
            enc_rz.append(len(ops))
            ops.append(sv.rz(k, 0.0))
        else:
            enc_ry.append(len(ops))
            ops.append(sv.ry(k, 0.0))
    var_pos = np.empty((descriptor.n_layers, n, 3), dtype=np.intp)
    for layer in range(descriptor.n_layers):
        for q in range(n):
            for r, ctor in enumerate((sv.rx, sv.ry, sv.rz)):
                var_pos[layer, q, r] = len(ops)
                ops.append(ctor(q, 0.0))
        if n >= 2:
            ops += [sv.cnot(k, (k + 1) % n) for k in range(n)]
    kinds, targets, controls, _ = sv.encode_ops(ops)
    return _Template(kinds, targets, controls, len(ops),
                     np.array(enc_ry, dtype=np.intp),
                     np.array(enc_rz, dtype=np.intp) if arctan else None,
                     var_pos)


def _angle_vector(template: _Template, descriptor: VqcDescriptor,
                  angles: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros(template.n_ops)
    if descriptor.encoding == "angle_arctan":
        out[template.enc_ry] = np.arctan(v)
        out[template.enc_rz] = np.arctan(v * v)
    else:
        out[template.enc_ry] = v
    if descriptor.n_layers:
        out[template.var_pos.ravel()] = angles.ravel()
    return out


def vqc_forward(descriptor: VqcDescriptor, params: VqcParams, v) -> np.ndarray:
    """Per-qubit Z expectations after the full circuit; each in [-1, 1]."""
    v = _check_input(descriptor, v)
    angles = _check_params(descriptor, params)
    template = _template(descriptor)
    vec = _angle_vector(template, descriptor, angles, v)
    out = kernels.batch_run_expect_all_z(descriptor.n_qubits, template.kinds,
                                         template.targets, template.controls,
                                         vec[np.newaxis, :])
    return out[0]


def vqc_gradients(descriptor: VqcDescriptor, params: VqcParams, v,
                  upstream) -> tuple[np.ndarray, np.ndarray]:
    """Parameter-shift gradients of ``upstream . vqc_forward(...)``.

    Returns (angle_grads, input_grads). Input gradients chain the shift-rule
    derivative of the encoding angles through d(arctan v)/dv = 1/(1+v^2) and
    d(arctan v^2)/dv = 2v/(1+v^4) for the arctan encoding; for the linear
    encoding the chain factor is 1.
    """
    v = _check_input(descriptor, v)
    angles = _check_params(descriptor, params)
    upstream = np.asarray(upstream, dtype=float)
    if upstream.shape != (descriptor.n_qubits,):
        raise ShapeError(f"upstream shape {upstream.shape} does not match "
                         f"{descriptor.n_qubits} outputs")
    template = _template(descriptor)
    base = _angle_vector(template, descriptor, angles, v)

    arctan = descriptor.encoding == "angle_arctan"
    slots = [template.var_pos.ravel(), template.enc_ry]
    if arctan:
        slots.append(template.enc_rz)
    slots = np.concatenate(slots)
    n_slots = len(slots)

    batch = np.repeat(base[np.newaxis, :], 2 * n_slots, axis=0)
    rows = np.arange(n_slots)
    batch[2 * rows, slots] += _SHIFT
    batch[2 * rows + 1, slots] -= _SHIFT
    expect = kernels.batch_run_expect_all_z(descriptor.n_qubits, template.kinds,
                                            template.targets, template.controls,
                                            batch)
    # one shift-rule derivative of upstream . E per slot
    slot_grads = ((expect[0::2] - expect[1::2]) / 2.0) @ upstream

    n_var = template.var_pos.size
    angle_grads = slot_grads[:n_var].reshape(angles.shape)
    if arctan:
        g_ry = slot_grads[n_var:n_var + descriptor.n_qubits]
        g_rz = slot_grads[n_var + descriptor.n_qubits:]
        input_grads = g_ry / (1.0 + v * v) + g_rz * (2.0 * v) / (1.0 + v ** 4)
    else:
        input_grads = slot_grads[n_var:].copy()
    return angle_grads, input_grads
