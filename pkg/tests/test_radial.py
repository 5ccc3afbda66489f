import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate
from sympy import Float, lambdify, symbols
from sympy.physics import hydrogen, sho

from covbound.errors import ConfigError, ConvergenceError, DomainError
from covbound.radial import (
    Coulomb, Oscillator, RadialGrid, Tabulated, box_eigenvalues, count_nodes, coulomb_K, coulomb_radial,
    oscillator_K, oscillator_length, oscillator_radial, solve_radial_numeric, sturm_count,
)
from covbound.units import ATOMIC, EV

r = symbols("r", positive=True)


@pytest.mark.parametrize("n_a,ell,Z", [(0, 0, 1), (1, 0, 1), (0, 2, 2), (3, 1, 2)])
def test_coulomb_radial_against_sympy(n_a, ell, Z):
    N = n_a + ell + 1
    ref = lambdify(r, hydrogen.R_nl(N, ell, r, Z), "numpy")
    rho = np.linspace(0.01, 30, 50)
    np.testing.assert_allclose(coulomb_radial(n_a, ell, Z, rho), ref(rho), rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("n_a,ell", [(0, 0), (1, 0), (2, 1), (0, 3)])
def test_oscillator_radial_against_sympy(n_a, ell):
    # sympy's sho.R_nl uses nu = m omega / (2 hbar) and numbers states from n = 0
    ref = lambdify(r, sho.R_nl(n_a, ell, Float(0.5), r), "numpy")
    rho = np.linspace(0.01, 6, 40)
    ours = oscillator_radial(n_a, ell, 1.0, rho)
    np.testing.assert_allclose(np.abs(ours), np.abs(ref(rho)), rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("fn", [
    lambda x: coulomb_radial(2, 1, 1, x, 0.5),
    lambda x: oscillator_radial(1, 2, 2.0, x, 1.5),
])
def test_radial_normalisation_quad(fn):
    val, _ = integrate.quad(lambda x: fn(x) ** 2 * x * x, 0, np.inf, limit=200)
    assert val == pytest.approx(1.0, rel=1e-10)


def test_closed_form_levels():
    assert [coulomb_K(n, 0) for n in range(3)] == pytest.approx([-0.5, -0.125, -1 / 18])
    assert coulomb_K(0, 0, Z=2) == -2.0
    assert oscillator_K(0, 0) == 1.5
    assert oscillator_K(0, 1) == 2.5
    assert oscillator_K(1, 0) == 3.5
    assert oscillator_K(0, 0, 2.0) - 2.0 * 1.5 == 0.0
    with pytest.raises(DomainError):
        coulomb_K(-1, 0)


def test_units_scale_levels():
    m = 510998.95 / 2
    K = coulomb_K(0, 0, 1, m, EV)
    assert K == pytest.approx(-13.605693 / 2, rel=1e-6)
    assert oscillator_length(1.0, 1.0, ATOMIC) == 1.0


def test_potentials_validate():
    with pytest.raises(ConfigError):
        Coulomb(0)
    with pytest.raises(ConfigError):
        Coulomb(1.5)
    with pytest.raises(ConfigError):
        Oscillator(-1.0)
    with pytest.raises(ConfigError):
        Tabulated(np.array([0.0, 1.0, 0.5, 2.0]), np.zeros(4))
    with pytest.raises(ConfigError):
        RadialGrid(points=3)
    with pytest.raises(ConfigError):
        RadialGrid(tol=0.0)


def test_sturm_count_against_eigvalsh():
    rng = np.random.default_rng(4)
    d, e = rng.normal(size=30), rng.normal(size=29)
    w = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    for x in (-3.0, -0.5, 0.0, 1.2, 4.0):
        assert sturm_count(d, e, x) == int(np.sum(w < x))


def test_count_nodes():
    x = np.linspace(0, 10, 1000)
    assert count_nodes(np.sin(x)) == 3
    assert count_nodes(np.exp(-x)) == 0


@pytest.mark.parametrize("Z", [1, 2])
@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_numeric_coulomb(Z, ell):
    sols = solve_radial_numeric(Coulomb(Z), ell, 5 - ell)
    for s in sols:
        assert s.K_a == pytest.approx(coulomb_K(s.n_a, ell, Z), rel=1e-6)
        assert s.nodes == s.n_a
        assert s.norm() == pytest.approx(1.0, rel=1e-6)
        assert s.error_estimate < 1e-6 * abs(s.K_a)


def test_numeric_wavefunction_matches_closed_form():
    s = solve_radial_numeric(Coulomb(1), 1, 2)[1]
    exact = coulomb_radial(1, 1, 1, s.rho)
    assert np.max(np.abs(s.R_hat - exact)) < 1e-4 * np.max(np.abs(exact))


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_numeric_oscillator(ell):
    for s in solve_radial_numeric(Oscillator(1.0), ell, 6):
        assert s.K_a == pytest.approx(oscillator_K(s.n_a, ell), rel=1e-6)


def test_numeric_oscillator_scaled_mass():
    s = solve_radial_numeric(Oscillator(2.0), 0, 2, m=3.0)
    np.testing.assert_allclose([x.K_a for x in s], [3.0, 7.0], rtol=1e-6)


def test_tabulated_reproduces_oscillator():
    rho = np.linspace(0, 14, 800)
    tab = Tabulated(rho, 0.5 * rho**2)
    s = solve_radial_numeric(tab, 0, 3, RadialGrid(points=4000, tol=1e-4))
    np.testing.assert_allclose([x.K_a for x in s], [1.5, 3.5, 5.5], rtol=1e-5)


def test_convergence_error_on_coarse_grid():
    with pytest.raises(ConvergenceError):
        solve_radial_numeric(Coulomb(1), 0, 3, RadialGrid(points=50, tol=1e-12))


def test_collapse_detection():
    with pytest.raises(DomainError):
        solve_radial_numeric(lambda x: -1.0 / x**3, 0, 1, RadialGrid(rho_max=10.0))
    with pytest.raises(ConfigError):
        solve_radial_numeric(lambda x: x, 0, 1)


def test_box_levels_for_free_particle():
    s = solve_radial_numeric(lambda x: np.zeros_like(x), 0, 3, RadialGrid(rho_max=10.0))
    np.testing.assert_allclose([x.K_a for x in s], box_eigenvalues(3, 10.0), rtol=1e-6)


@given(st.integers(0, 6), st.integers(0, 4), st.floats(0.1, 5.0))
@settings(max_examples=40)
def test_oscillator_zero_point_offset(n_a, ell, omega):
    """K - hbar omega (ell + 2 n_a) is exactly 3/2 hbar omega."""
    assert oscillator_K(n_a, ell, omega) - omega * (ell + 2 * n_a) == pytest.approx(1.5 * omega, rel=1e-14)


def test_numeric_degeneracy_and_monotonicity():
    grid = RadialGrid(points=8000, tol=1e-5)
    l0 = solve_radial_numeric(Coulomb(1), 0, 3, grid)
    l1 = solve_radial_numeric(Coulomb(1), 1, 2, grid)
    for a, b in zip(l0[1:], l1):
        assert a.K_a == pytest.approx(b.K_a, rel=1e-5)
    base = [s.K_a for s in solve_radial_numeric(lambda x: -1.0 / x, 0, 3, RadialGrid(8000, 300.0, 1e-4))]
    deeper = [s.K_a for s in solve_radial_numeric(lambda x: -1.2 / x, 0, 3, RadialGrid(8000, 300.0, 1e-4))]
    assert all(d <= b for d, b in zip(deeper, base))


def test_closed_form_orthogonality():
    for fn in (lambda n, x: coulomb_radial(n, 0, 1, x), lambda n, x: oscillator_radial(n, 1, 1.0, x)):
        val, _ = integrate.quad(lambda x: fn(0, x) * fn(1, x) * x * x, 0, np.inf, limit=200)
        assert abs(val) < 1e-8


def test_closed_form_node_counts():
    x = np.linspace(1e-3, 80, 20000)
    xo = np.linspace(1e-3, 16, 5000)
    for n in range(4):
        assert count_nodes(x * coulomb_radial(n, 1, 1, x)) == n
        assert count_nodes(xo * oscillator_radial(n, 2, 1.0, xo)) == n
