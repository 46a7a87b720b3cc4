"""Pure-numpy gate kernels.

Fallback implementation of the hot statevector routines; the compiled
Cython module ``_gatekernels`` provides the same functions with identical
semantics. Amplitude index convention: qubit k is bit k of the basis index
(qubit 0 = least significant bit).

All ``amp`` arguments are 1-d complex128 arrays of length ``2**n_qubits``
and are modified in place; callers own the copy-on-write discipline.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

GATE_H = 0
GATE_RX = 1
GATE_RY = 2
GATE_RZ = 3
GATE_CNOT = 4

_SQRT1_2 = 1.0 / math.sqrt(2.0)


def _apply_1q(amp: np.ndarray, target: int, m00, m01, m10, m11) -> None:
    # index = high * 2^(t+1) + bit * 2^t + low, so the middle axis is bit t
    view = amp.reshape(-1, 2, 1 << target)
    x0 = view[:, 0, :].copy()
    x1 = view[:, 1, :].copy()
    view[:, 0, :] = m00 * x0 + m01 * x1
    view[:, 1, :] = m10 * x0 + m11 * x1


@lru_cache(maxsize=None)
def _cnot_pairs(n_qubits: int, control: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1 << n_qubits)
    src = idx[((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)]
    return src, src | (1 << target)


def _apply_op(amp: np.ndarray, n_qubits: int, kind: int, target: int,
              control: int, angle: float) -> None:
    if kind == GATE_H:
        _apply_1q(amp, target, _SQRT1_2, _SQRT1_2, _SQRT1_2, -_SQRT1_2)
    elif kind == GATE_RX:
        c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
        _apply_1q(amp, target, c, -1j * s, -1j * s, c)
    elif kind == GATE_RY:
        c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
        _apply_1q(amp, target, c, -s, s, c)
    elif kind == GATE_RZ:
        c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
        _apply_1q(amp, target, complex(c, -s), 0.0, 0.0, complex(c, s))
    elif kind == GATE_CNOT:
        src, dst = _cnot_pairs(n_qubits, control, target)
        tmp = amp[src].copy()
        amp[src] = amp[dst]
        amp[dst] = tmp
    else:
        raise ValueError(f"unknown gate code {kind}")


def run_ops_inplace(amp: np.ndarray, n_qubits: int, kinds: np.ndarray,
                    targets: np.ndarray, controls: np.ndarray,
                    angles: np.ndarray) -> None:
    """Apply the encoded op list to ``amp`` in order, in place."""
    for k in range(len(kinds)):
        _apply_op(amp, n_qubits, int(kinds[k]), int(targets[k]),
                  int(controls[k]), float(angles[k]))


def expect_z(amp: np.ndarray, qubit: int) -> float:
    """Exact ⟨Z⟩ of one qubit: Σ |amp|² · (+1 if bit clear, −1 if set)."""
    probs = amp.real * amp.real + amp.imag * amp.imag
    p1 = probs.reshape(-1, 2, 1 << qubit)[:, 1, :].sum()
    return float(1.0 - 2.0 * p1)


def expect_all_z(amp: np.ndarray, n_qubits: int) -> np.ndarray:
    probs = amp.real * amp.real + amp.imag * amp.imag
    out = np.empty(n_qubits)
    for q in range(n_qubits):
        p1 = probs.reshape(-1, 2, 1 << q)[:, 1, :].sum()
        out[q] = 1.0 - 2.0 * p1
    return out


def batch_run_expect_all_z(n_qubits: int, kinds: np.ndarray, targets: np.ndarray,
                           controls: np.ndarray, angles_batch: np.ndarray) -> np.ndarray:
    """Run the same op list from |0…0⟩ once per row of ``angles_batch``.

    Returns the per-run all-Z expectation matrix [n_runs, n_qubits]. This is
    the workhorse of parameter-shift gradient evaluation, where many runs
    differ only in a single angle.
    """
    n_runs = angles_batch.shape[0]
    dim = 1 << n_qubits
    out = np.empty((n_runs, n_qubits))
    amp = np.empty(dim, dtype=np.complex128)
    for r in range(n_runs):
        amp[:] = 0.0
        amp[0] = 1.0
        run_ops_inplace(amp, n_qubits, kinds, targets, controls, angles_batch[r])
        out[r] = expect_all_z(amp, n_qubits)
    return out
