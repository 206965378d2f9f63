import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hardykernels import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba not installed")


@needs_numba
@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_horner_parity(seed, deg):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    z = np.exp(2j * np.pi * rng.uniform(size=50)) * rng.uniform(0.2, 2, size=50)
    a = _kernels.horner_numpy(c, z)
    b = _kernels.horner_numba(c, z)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
    assert np.allclose(a, np.polyval(c[::-1], z), rtol=1e-12)


@needs_numba
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_toeplitz_fill_parity(seed, n):
    rng = np.random.default_rng(seed)
    N = 64
    coeffs = rng.normal(size=(N, n, n)) + 1j * rng.normal(size=(N, n, n))
    a = _kernels.toeplitz_fill_numpy(coeffs, 16, 8)
    b = _kernels.toeplitz_fill_numba(coeffs, 16, 8)
    assert np.array_equal(a, b)
    assert a[n * 3, n * 1] == coeffs[2, 0, 0]


@needs_numba
@given(st.integers(0, 2**32 - 1), st.integers(0, 6))
def test_blaschke_parity(seed, deg):
    rng = np.random.default_rng(seed)
    zeros = 0.9 * np.sqrt(rng.uniform(size=deg)) * np.exp(2j * np.pi * rng.uniform(size=deg))
    z = np.exp(2j * np.pi * rng.uniform(size=40))
    a = _kernels.blaschke_eval_numpy(zeros, 1j, z)
    b = _kernels.blaschke_eval_numba(zeros, 1j, z)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
    assert np.allclose(np.abs(a), 1, atol=1e-12)


def test_env_flag_selects_numpy():
    code = ("from hardykernels import _kernels; "
            "print(_kernels.USE_NUMBA)")
    env = dict(os.environ, HARDYKERNELS_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "False"
