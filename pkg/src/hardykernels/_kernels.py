"""Hot inner loops with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``HARDYKERNELS_NUMBA`` is not
set to ``0``.  Both paths are always importable as ``*_numpy`` / ``*_numba``
so tests and the benchmark can compare them directly.
"""
import os

import numpy as np

try:
    import numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("HARDYKERNELS_NUMBA", "1") != "0"


def horner_numpy(coeffs, z):
    """Evaluate the polynomial with ascending ``coeffs`` at every point of ``z``."""
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros_like(z)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def toeplitz_fill_numpy(coeffs, rows, cols):
    """Block-Toeplitz assembly.

    ``coeffs`` has shape (N, n, n) indexed by wrapped frequency.  Returns the
    (rows*n, cols*n) matrix whose block (j, k) is ``coeffs[(j - k) % N]``.
    """
    N, n, _ = coeffs.shape
    j = np.arange(rows)[:, None]
    k = np.arange(cols)[None, :]
    blocks = coeffs[(j - k) % N]                   # (rows, cols, n, n)
    return blocks.transpose(0, 2, 1, 3).reshape(rows * n, cols * n)


def blaschke_eval_numpy(zeros, const, z):
    z = np.asarray(z, dtype=np.complex128)
    out = np.full(z.shape, const, dtype=np.complex128)
    for a in zeros:
        out = out * (z - a) / (1.0 - np.conj(a) * z)
    return out


if HAS_NUMBA:

    @numba.njit(cache=True)
    def horner_numba(coeffs, z):
        out = np.empty(z.shape[0], dtype=np.complex128)
        m = coeffs.shape[0]
        for i in range(z.shape[0]):
            acc = 0j
            zi = z[i]
            for k in range(m - 1, -1, -1):
                acc = acc * zi + coeffs[k]
            out[i] = acc
        return out

    @numba.njit(cache=True)
    def toeplitz_fill_numba(coeffs, rows, cols):
        N = coeffs.shape[0]
        n = coeffs.shape[1]
        out = np.empty((rows * n, cols * n), dtype=np.complex128)
        for j in range(rows):
            for k in range(cols):
                idx = (j - k) % N
                for a in range(n):
                    for b in range(n):
                        out[j * n + a, k * n + b] = coeffs[idx, a, b]
        return out

    @numba.njit(cache=True)
    def blaschke_eval_numba(zeros, const, z):
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            acc = const
            zi = z[i]
            for a in zeros:
                acc = acc * (zi - a) / (1.0 - np.conj(a) * zi)
            out[i] = acc
        return out
else:  # pragma: no cover
    horner_numba = horner_numpy
    toeplitz_fill_numba = toeplitz_fill_numpy
    blaschke_eval_numba = blaschke_eval_numpy


def horner(coeffs, z):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    if USE_NUMBA:
        flat = np.ascontiguousarray(z.ravel())
        return horner_numba(coeffs, flat).reshape(z.shape)
    return horner_numpy(coeffs, z)


def toeplitz_fill(coeffs, rows, cols):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if USE_NUMBA:
        return toeplitz_fill_numba(coeffs, int(rows), int(cols))
    return toeplitz_fill_numpy(coeffs, rows, cols)


def blaschke_eval(zeros, const, z):
    zeros = np.ascontiguousarray(zeros, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    if USE_NUMBA:
        flat = np.ascontiguousarray(z.ravel())
        return blaschke_eval_numba(zeros, complex(const), flat).reshape(z.shape)
    return blaschke_eval_numpy(zeros, const, z)
