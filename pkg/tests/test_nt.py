import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from expolab.nt.arith import (divisor_count, divisor_counts, divisor_sums, inverse_table,
                              is_prime, mod_inverse, primes_upto, require_odd_prime)
from expolab.nt.kloosterman import kloosterman, kloosterman_table, weil_ratio
from expolab.nt.tau import tau_naive_product, tau_table
from expolab.nt.weight import (QuadratureError, bump_fourier, bump_fourier_grid, bump_weight,
                               fit_decay_constants, stored_decay_constants)
from expolab.reproduce import hecke_defect

# --- arithmetic ---------------------------------------------------------------


@pytest.mark.parametrize("n, d", [(1, 1), (12, 6), (97, 2), (360, 24)])
def test_divisor_count(n, d):
    assert divisor_count(n) == d


def test_divisor_tables_match_brute_force():
    d, s = divisor_counts(300), divisor_sums(300)
    for n in range(1, 301):
        divs = [k for k in range(1, n + 1) if n % k == 0]
        assert d[n] == len(divs) and s[n] == sum(divs)


def test_primes():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(p) == (p in primes_upto(200)) for p in range(200))
    with pytest.raises(ValueError):
        require_odd_prime(2)
    with pytest.raises(ValueError):
        require_odd_prime(9)


@pytest.mark.parametrize("a, q, inv", [(2, 7, 4), (3, 101, 34)])
def test_mod_inverse_examples(a, q, inv):
    assert mod_inverse(a, q) == inv
    assert next(b for b in range(1, q) if a * b % q == 1) == inv


def test_mod_inverse_not_invertible():
    with pytest.raises(ValueError):
        mod_inverse(14, 7)


@given(st.sampled_from(primes_upto(400)[1:]), st.integers(1, 10**6))
def test_mod_inverse_property(q, a):
    if a % q:
        assert a * mod_inverse(a, q) % q == 1
        assert inverse_table(q)[a % q] == mod_inverse(a, q)


# --- tau and lambda -------------------------------------------------------------


def test_tau_small_values(table):
    assert table.tau[1:7] == (1, -24, 252, -1472, 4830, -6048)
    assert table.lam[1] == 1.0


def test_tau_matches_product_oracle(table):
    assert tau_naive_product(300) == list(table.tau[:301])


def test_tau_prefix_is_consistent():
    # Tables of different length share the prefix (different CRT prime sets).
    assert tau_table(500).tau == tau_table(4096).tau[:501]


def test_tau_multiplicative(table):
    assert table.tau[6] == table.tau[2] * table.tau[3]
    # Hecke at p = 2: tau(4) = tau(2)^2 - 2^11
    assert table.tau[4] == table.tau[2] ** 2 - 2**11


def test_table_coverage(table):
    assert table.covers(4096) and not table.covers(4097)
    with pytest.raises(ValueError):
        table.require(5000)


def test_hecke_relation(table):
    assert hecke_defect(table.lam, table.n_max) <= 1e-10


def test_deligne_bound(table):
    d = divisor_counts(table.n_max)
    assert np.all(np.abs(table.lam[1:]) <= d[1:])


def test_average_bound(table):
    # Recorded constant: sum_{n <= x} lam(n)^2 <= 4 x (1 + log x) at x = 2^k.
    partial = np.cumsum(table.lam ** 2)
    for k in range(0, 13):
        x = 2**k
        assert partial[x] <= 4 * x * (1 + math.log(x))


# --- Kloosterman ----------------------------------------------------------------


@pytest.mark.parametrize("q", [3, 5, 101])
def test_kloosterman_trivial(q):
    assert kloosterman(0, 0, q) == pytest.approx(q - 1, abs=1e-9)
    for n in (1, 2, q + 1):
        assert kloosterman(0, n, q) == pytest.approx(-1, abs=1e-9)


def test_kloosterman_small():
    # e(2/3) + e(4/3) = 2 cos(4 pi / 3)
    assert kloosterman(1, 1, 3) == pytest.approx(2 * math.cos(4 * math.pi / 3), abs=1e-12)
    assert kloosterman(1, 1, 3) == pytest.approx(-1, abs=1e-12)


@given(st.sampled_from([5, 7, 11, 53, 101]), st.integers(-300, 300), st.integers(-300, 300))
def test_kloosterman_symmetry_and_weil(q, m, n):
    s = kloosterman(m, n, q)
    assert s == pytest.approx(kloosterman(n, m, q), abs=1e-9)
    # S(m, n) depends only on mn mod q when q does not divide m.
    if m % q:
        assert s == pytest.approx(kloosterman(1, m * n, q), abs=1e-9)
    if (m * n) % q:
        assert abs(s) <= 2 * math.sqrt(q)


@pytest.mark.parametrize("q", [3, 7, 53])
def test_table_matches_single_sums(q):
    t = kloosterman_table(q)
    for m in range(q):
        for n in range(q):
            assert t[m, n] == pytest.approx(kloosterman(m, n, q), abs=1e-9)


def test_weil_all_small_primes():
    assert max(weil_ratio(q) for q in primes_upto(200) if q > 2) <= 1.0


# --- weight -------------------------------------------------------------------------


def test_bump_weight_values():
    assert bump_weight(0.5) == 0 and bump_weight(2.0) == 0
    assert bump_weight(1.25) == pytest.approx(1.0, abs=1e-15)
    assert bump_weight(0.2) == 0 and bump_weight(3.0) == 0
    xs = np.linspace(0.51, 1.99, 50)
    assert np.all(bump_weight(xs) > 0) and np.max(bump_weight(xs)) <= 1.0 + 1e-15


def test_bump_fourier_zero_vs_riemann():
    n = 10**6
    h = 1.5 / n
    mid = 0.5 + h * (np.arange(n) + 0.5)
    riemann = math.fsum(bump_weight(mid)) * h
    got = bump_fourier(0.0, 1e-10)
    assert got.imag == 0 and got.real > 0
    assert abs(got.real - riemann) <= 1e-9


def test_bump_fourier_rejects_bad_tol():
    with pytest.raises(ValueError):
        bump_fourier(1.0, 0)


def test_bump_fourier_reports_unreachable_tolerance():
    with pytest.raises(QuadratureError) as info:
        bump_fourier(3.0, 1e-300)
    assert info.value.achieved > 1e-300


@pytest.mark.parametrize("y", [0.0, 0.3, -1.7, 5.25, 40.0])
def test_grid_matches_quadrature(y):
    assert abs(bump_fourier_grid([y])[0] - bump_fourier(y, 1e-12)) <= 1e-11


def test_fourier_conjugate_symmetry():
    ys = np.array([0.5, 3.0, 17.25])
    assert np.allclose(bump_fourier_grid(-ys), np.conj(bump_fourier_grid(ys)), atol=1e-15)


def test_decay_constants_stable():
    stored = stored_decay_constants()
    finer = fit_decay_constants(y_max=stored.y_max, step=stored.step / 2, safety=1.0)
    assert finer.c2 <= stored.c2 and finer.c4 <= stored.c4
    assert finer.c2 >= stored.c2 / 1.02 and finer.c4 >= stored.c4 / 1.02


def test_decay_bound_off_grid():
    c = stored_decay_constants()
    ys = np.linspace(0, c.y_max, 9973) * (math.sqrt(2) - 0.4)
    mag = np.abs(bump_fourier_grid(ys))
    for k in (2, 4):
        assert np.all(mag <= c.bound(ys, k))
