"""Gate-kernel backend selection.

The compiled Cython kernels are used when the extension built; otherwise the
pure-numpy fallback takes over transparently. Both expose the same functions
with identical numeric semantics, so everything above this module is
backend-agnostic. ``set_backend`` exists for tests and benchmarks that need
to pin one implementation.
"""

from __future__ import annotations

import numpy as np

from . import _gatekernels_py

try:
    from . import _gatekernels  # compiled extension
except ImportError:  # pragma: no cover - depends on the build environment
    _gatekernels = None

GATE_H = _gatekernels_py.GATE_H
GATE_RX = _gatekernels_py.GATE_RX
GATE_RY = _gatekernels_py.GATE_RY
GATE_RZ = _gatekernels_py.GATE_RZ
GATE_CNOT = _gatekernels_py.GATE_CNOT

GATE_CODES = {"H": GATE_H, "RX": GATE_RX, "RY": GATE_RY,
              "RZ": GATE_RZ, "CNOT": GATE_CNOT}

_BACKENDS = {"python": _gatekernels_py}
if _gatekernels is not None:
    _BACKENDS["compiled"] = _gatekernels

_active = _BACKENDS.get("compiled", _gatekernels_py)


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return "compiled" if _active is _gatekernels else "python"


def get_backend(name: str):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}") from None


def set_backend(name: str) -> None:
    global _active
    _active = get_backend(name)


def run_ops_inplace(amp: np.ndarray, n_qubits: int, kinds: np.ndarray,
                    targets: np.ndarray, controls: np.ndarray,
                    angles: np.ndarray) -> None:
    _active.run_ops_inplace(amp, n_qubits, kinds, targets, controls, angles)


def expect_z(amp: np.ndarray, qubit: int) -> float:
    return _active.expect_z(amp, qubit)


def expect_all_z(amp: np.ndarray, n_qubits: int) -> np.ndarray:
    return _active.expect_all_z(amp, n_qubits)


def batch_run_expect_all_z(n_qubits: int, kinds: np.ndarray, targets: np.ndarray,
                           controls: np.ndarray, angles_batch: np.ndarray) -> np.ndarray:
    return _active.batch_run_expect_all_z(n_qubits, kinds, targets, controls, angles_batch)
