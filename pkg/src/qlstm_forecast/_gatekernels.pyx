# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled gate kernels.

Same contract as ``_gatekernels_py`` (the pure-numpy fallback); keep the two
in lockstep. Qubit k is bit k of the basis index (qubit 0 = LSB).
"""

from libc.math cimport cos, sin, sqrt

import numpy as np

GATE_H = 0
GATE_RX = 1
GATE_RY = 2
GATE_RZ = 3
GATE_CNOT = 4

cdef double _SQRT1_2 = 1.0 / sqrt(2.0)


cdef void _pairwise(double complex[::1] amp, Py_ssize_t dim, int target,
                    double complex m00, double complex m01,
                    double complex m10, double complex m11) noexcept nogil:
    cdef Py_ssize_t step = 1 << target
    cdef Py_ssize_t base = 0
    cdef Py_ssize_t j, i0, i1
    cdef double complex a, b
    while base < dim:
        for j in range(step):
            i0 = base + j
            i1 = i0 + step
            a = amp[i0]
            b = amp[i1]
            amp[i0] = m00 * a + m01 * b
            amp[i1] = m10 * a + m11 * b
        base += 2 * step


cdef void _cnot(double complex[::1] amp, Py_ssize_t dim, int control, int target) noexcept nogil:
    cdef Py_ssize_t cbit = 1 << control
    cdef Py_ssize_t tbit = 1 << target
    cdef Py_ssize_t i, j
    cdef double complex tmp
    for i in range(dim):
        if (i & cbit) != 0 and (i & tbit) == 0:
            j = i | tbit
            tmp = amp[i]
            amp[i] = amp[j]
            amp[j] = tmp


cdef int _run(double complex[::1] amp, Py_ssize_t dim,
              const long long[::1] kinds, const long long[::1] targets,
              const long long[::1] controls, const double[::1] angles) noexcept nogil:
    cdef Py_ssize_t k
    cdef int kind
    cdef double c, s
    for k in range(kinds.shape[0]):
        kind = <int> kinds[k]
        if kind == 0:      # H
            _pairwise(amp, dim, <int> targets[k],
                      _SQRT1_2, _SQRT1_2, _SQRT1_2, -_SQRT1_2)
        elif kind == 1:    # RX
            c = cos(angles[k] / 2.0)
            s = sin(angles[k] / 2.0)
            _pairwise(amp, dim, <int> targets[k], c, -1j * s, -1j * s, c)
        elif kind == 2:    # RY
            c = cos(angles[k] / 2.0)
            s = sin(angles[k] / 2.0)
            _pairwise(amp, dim, <int> targets[k], c, -s, s, c)
        elif kind == 3:    # RZ
            c = cos(angles[k] / 2.0)
            s = sin(angles[k] / 2.0)
            _pairwise(amp, dim, <int> targets[k], c - 1j * s, 0.0, 0.0, c + 1j * s)
        elif kind == 4:    # CNOT
            _cnot(amp, dim, <int> controls[k], <int> targets[k])
        else:
            return -1
    return 0


def run_ops_inplace(double complex[::1] amp, int n_qubits,
                    const long long[::1] kinds, const long long[::1] targets,
                    const long long[::1] controls, const double[::1] angles):
    """Apply the encoded op list to ``amp`` in order, in place."""
    if _run(amp, amp.shape[0], kinds, targets, controls, angles) != 0:
        raise ValueError("unknown gate code")


cdef double _expect_z(const double complex[::1] amp, Py_ssize_t dim, int qubit) noexcept nogil:
    cdef Py_ssize_t bit = 1 << qubit
    cdef Py_ssize_t i
    cdef double acc = 0.0
    cdef double p
    for i in range(dim):
        p = amp[i].real * amp[i].real + amp[i].imag * amp[i].imag
        if i & bit:
            acc -= p
        else:
            acc += p
    return acc


def expect_z(const double complex[::1] amp, int qubit):
    """Exact ⟨Z⟩ of one qubit: Σ |amp|² · (+1 if bit clear, −1 if set)."""
    return _expect_z(amp, amp.shape[0], qubit)


cdef void _expect_all_z(const double complex[::1] amp, Py_ssize_t dim,
                        int n_qubits, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i
    cdef int q
    cdef double p
    for q in range(n_qubits):
        out[q] = 0.0
    for i in range(dim):
        p = amp[i].real * amp[i].real + amp[i].imag * amp[i].imag
        for q in range(n_qubits):
            if i & (<Py_ssize_t> 1 << q):
                out[q] -= p
            else:
                out[q] += p


def expect_all_z(const double complex[::1] amp, int n_qubits):
    out = np.empty(n_qubits)
    cdef double[::1] out_view = out
    _expect_all_z(amp, amp.shape[0], n_qubits, out_view)
    return out


def batch_run_expect_all_z(int n_qubits, const long long[::1] kinds,
                           const long long[::1] targets, const long long[::1] controls,
                           const double[:, ::1] angles_batch):
    """Run the same op list from |0…0⟩ once per row of ``angles_batch``.

    Returns the per-run all-Z expectation matrix [n_runs, n_qubits].
    """
    cdef Py_ssize_t n_runs = angles_batch.shape[0]
    cdef Py_ssize_t dim = <Py_ssize_t> 1 << n_qubits
    out = np.empty((n_runs, n_qubits))
    scratch = np.empty(dim, dtype=np.complex128)
    cdef double[:, ::1] out_view = out
    cdef double complex[::1] amp = scratch
    cdef Py_ssize_t r, i
    cdef int status = 0
    with nogil:
        for r in range(n_runs):
            for i in range(dim):
                amp[i] = 0.0
            amp[0] = 1.0
            status = _run(amp, dim, kinds, targets, controls, angles_batch[r])
            if status != 0:
                break
            _expect_all_z(amp, dim, n_qubits, out_view[r])
    if status != 0:
        raise ValueError("unknown gate code")
    return out
