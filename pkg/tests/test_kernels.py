import os
import subprocess
import sys

import numpy as np
import pytest

from expolab import kernels
from expolab.kernels import numpy_impl
from expolab.nt.arith import divisor_sums, inverse_table

numba_impl = pytest.importorskip("expolab.kernels.numba_impl")


def test_tau_recurrence_agrees():
    p = 16_777_213
    n = 2000
    sigma = divisor_sums(n) % p
    inv = np.zeros(n + 1, dtype=np.int64)
    inv[1:] = [pow(k, -1, p) for k in range(1, n + 1)]
    a = numpy_impl.tau_recurrence_mod(sigma, inv, p)
    b = numba_impl.tau_recurrence_mod(sigma, inv, p)
    assert np.array_equal(a, b)
    assert a[1] == 1 and a[2] == (-24) % p


@pytest.mark.parametrize("q", [3, 11, 101])
def test_kloosterman_matrix_agrees(q):
    inv = inverse_table(q)
    a = numpy_impl.kloosterman_matrix(q, inv)
    b = numba_impl.kloosterman_matrix(q, inv)
    assert np.allclose(a, b, atol=1e-9)
    assert a[0, 0] == pytest.approx(q - 1)


def test_fourier_grid_agrees():
    rng = np.random.default_rng(7)
    ys = rng.uniform(-300, 300, 400)
    xs = np.linspace(0.5, 2.0, 3001)[1:-1]
    wh = rng.uniform(0, 1, len(xs)) * 5e-4
    a = numpy_impl.fourier_grid(ys, xs, wh)
    b = numba_impl.fourier_grid(ys, xs, wh)
    assert np.allclose(a, b, atol=1e-12)


def test_twisted_partial_sums_agrees():
    rng = np.random.default_rng(11)
    coef = rng.normal(size=5001)
    coef[0] = 0
    alphas = rng.uniform(0, 1, 70)
    checkpoints = np.array([1, 17, 1000, 5000], dtype=np.int64)
    a = numpy_impl.twisted_partial_sums(coef, alphas, checkpoints)
    b = numba_impl.twisted_partial_sums(coef, alphas, checkpoints)
    assert a.shape == (len(alphas), len(checkpoints))
    assert np.allclose(a, b, atol=1e-10)
    n = np.arange(1, 18)
    direct = (coef[1:18, None] * np.exp(2j * np.pi * np.outer(n, alphas))).sum(axis=0)
    assert np.allclose(a[:, 1], direct, atol=1e-12)


def test_backend_flag():
    assert kernels.BACKEND in ("numba", "numpy")
    env = dict(os.environ, EXPOLAB_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", "import expolab.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
