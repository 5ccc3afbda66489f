import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from covbound import hyperangular as ha
from covbound.errors import DomainError, GridMismatch, GridTooCoarse, LegendreIndexError

# ---------------------------------------------------------------- symbolic oracle
T, B, P = sp.symbols("theta beta phi", real=True)
F = sp.Function("f")(T, B, P)


def _sym(name, f):
    d = sp.diff
    ep, em = sp.exp(sp.I * P), sp.exp(-sp.I * P)
    ops = {
        "L3": lambda u: -sp.I * d(u, P),
        "H+": lambda u: ep * (-sp.I * d(u, B) + sp.tanh(B) * d(u, P)),
        "H-": lambda u: em * (-sp.I * d(u, B) - sp.tanh(B) * d(u, P)),
        "A3": lambda u: -sp.I * (sp.cot(T) * sp.cosh(B) * d(u, B) - sp.sinh(B) * d(u, T)),
        "L+": lambda u: ep * (sp.cosh(B) * d(u, T) - sp.sinh(B) * sp.cot(T) * d(u, B) + sp.I * sp.cot(T) / sp.cosh(B) * d(u, P)),
        "L-": lambda u: em * (-sp.cosh(B) * d(u, T) + sp.sinh(B) * sp.cot(T) * d(u, B) + sp.I * sp.cot(T) / sp.cosh(B) * d(u, P)),
    }
    return ops[name](f)


def _sym_cart(name, f):
    if name in ("L1", "L2"):
        a, b = _sym("L+", f), _sym("L-", f)
        return (a + b) / 2 if name == "L1" else (a - b) / (2 * sp.I)
    if name in ("A1", "A2"):
        a, b = _sym("H+", f), _sym("H-", f)
        return (a + b) / 2 if name == "A1" else (a - b) / (2 * sp.I)
    return _sym(name, f)


def _comm(a, b, f):
    return _sym_cart(a, _sym_cart(b, f)) - _sym_cart(b, _sym_cart(a, f))


def _zero(expr, point=(0.7, 0.3, 1.1)):
    """Vanishing check on a concrete test function (symbolic simplification is slow)."""
    test = sp.exp(sp.sin(2 * T) * B) * (1 + sp.cos(P) + sp.I * sp.sin(2 * P)) * sp.cos(T) ** 2
    val = expr.subs(F, test).doit().subs({T: point[0], B: point[1], P: point[2]})
    return abs(complex(sp.N(val))) < 1e-12


def _n2_direct(f):
    return sp.diff(f, B, 2) + sp.tanh(B) * sp.diff(f, B) - sp.diff(f, P, 2) / sp.cosh(B) ** 2


def test_lorentz_algebra_symbolic():
    """[L_i, L_j] = i eps L_k, [L_i, A_j] = i eps A_k, [A_i, A_j] = -i eps L_k."""
    triples = [("1", "2", "3"), ("2", "3", "1"), ("3", "1", "2")]
    for i, j, k in triples:
        assert _zero(_comm("L" + i, "L" + j, F) - sp.I * _sym_cart("L" + k, F))
        assert _zero(_comm("L" + i, "A" + j, F) - sp.I * _sym_cart("A" + k, F))
        assert _zero(_comm("A" + i, "A" + j, F) + sp.I * _sym_cart("L" + k, F))


def test_n2_casimir_form_symbolic():
    composed = _sym("L3", _sym("L3", F)) - (_sym("H+", _sym("H-", F)) + _sym("H-", _sym("H+", F))) / 2
    assert _zero(composed - _n2_direct(F))


def test_lambda_casimir_form_symbolic():
    ll = sum(_sym_cart(g, _sym_cart(g, F)) for g in ("L1", "L2", "L3"))
    aa = sum(_sym_cart(g, _sym_cart(g, F)) for g in ("A1", "A2", "A3"))
    direct = -sp.diff(F, T, 2) - 2 * sp.cot(T) * sp.diff(F, T) + _n2_direct(F) / sp.sin(T) ** 2
    assert _zero(ll - aa - direct)


@pytest.mark.parametrize("n,k", [(1, 0), (1, 2), (2, 1), (3, 0)])
def test_ladder_symbolic(n, k):
    z = sp.tanh(B)
    def chi_sym(kk):
        m = n + kk
        x = sp.Symbol("x")
        p_mn = sp.factorial(m - n) / sp.factorial(m + n) * (1 - x**2) ** sp.Rational(n, 2) * sp.diff(sp.legendre(m, x), x, n)
        prof = sp.sqrt(n) * sp.sqrt(sp.factorial(m + n) / sp.factorial(m - n)) * p_mn.subs(x, z)
        return (1 - z**2) ** sp.Rational(1, 4) * prof * sp.exp(sp.I * (m + sp.Rational(1, 2)) * P) / sp.sqrt(2 * sp.pi)
    lhs = _sym("H+", chi_sym(k))
    rhs = sp.I * sp.sqrt((k + 1) * (2 * n + k + 1)) * chi_sym(k + 1)
    for b in (-0.8, 0.2, 1.3):
        num = complex(sp.N((lhs - rhs).subs({B: b, P: 0.4})))
        assert abs(num) < 1e-12
    # cross-check the closed-form chi against the symbolic one
    val = ha.chi(ha.HyperangularState(n, k, n), math.tanh(0.2), 0.4)
    assert val == pytest.approx(complex(sp.N(chi_sym(k).subs({B: 0.2, P: 0.4}))), rel=1e-12)


# ---------------------------------------------------------------- closed forms


def test_state_validation():
    with pytest.raises(LegendreIndexError):
        ha.HyperangularState(2, 0, 1)
    with pytest.raises(DomainError):
        ha.HyperangularState(0, 0, 0)
    with pytest.raises(DomainError):
        ha.HyperangularState(1, 0, 1, eps=0.1)
    s = ha.HyperangularState(2, 1, 3, conjugated=True)
    assert (s.m, s.n2_eigenvalue, s.l3_eigenvalue) == (3, 3.75, -3.5)


def test_phi_modes():
    phi = np.linspace(0, 2 * math.pi, 9)
    np.testing.assert_allclose(ha.phi_m(2, phi + 2 * math.pi), -ha.phi_m(2, phi), atol=1e-14)
    with pytest.raises(DomainError):
        ha.phi_m(-1, 0.0)


def test_theta_fn_orthonormal():
    xi, w = np.polynomial.legendre.leggauss(30)
    for n in range(4):
        fam = [ha.theta_fn(ell, n, xi) for ell in range(n, n + 4)]
        gram = np.array([[np.sum(w * a * b) for b in fam] for a in fam])
        np.testing.assert_allclose(gram, np.eye(4), atol=1e-12)


def test_b_hat_unit_norm():
    beta = np.linspace(-25, 25, 5001)
    for m, n in [(1, 1), (3, 1), (4, 3)]:
        val = np.trapezoid(ha.b_hat(m, n, np.tanh(beta)) ** 2, beta)
        assert val == pytest.approx(1.0, rel=1e-10)


def test_chi_unit_norm_and_orthogonality():
    beta = np.linspace(-20, 20, 4001)
    phi = 2 * math.pi * np.arange(16) / 16
    bb, pp = np.meshgrid(beta, phi, indexing="ij")
    w = np.cosh(bb) * (beta[1] - beta[0]) * 2 * math.pi / 16
    a = ha.chi(ha.HyperangularState(1, 1, 1), np.tanh(bb), pp)
    b = ha.chi(ha.HyperangularState(2, 0, 2), np.tanh(bb), pp)
    assert np.sum(w * abs(a) ** 2) == pytest.approx(1.0, rel=1e-8)
    assert abs(np.sum(w * np.conj(a) * b)) < 1e-10


def test_lambda_eigenvalue_closed_form():
    assert [ha.lambda_eigenvalue(l) for l in range(3)] == [-0.75, 1.25, 5.25]


# ---------------------------------------------------------------- grids


@pytest.fixture(scope="module")
def grid():
    return ha.AngularGrid.uniform(48, 64, 16)


def test_grid_validation():
    with pytest.raises(DomainError):
        ha.AngularGrid(np.linspace(0, 1, 8), np.linspace(-1, 1, 8), np.arange(8.0))
    with pytest.raises(DomainError):
        ha.AngularGrid(np.linspace(0.1, 1, 8), np.geomspace(1, 2, 8), np.arange(8.0))


def test_grid_function_arithmetic(grid):
    f = ha.product_state(ha.HyperangularState(1, 0, 1), grid)
    other = ha.AngularGridFunction(ha.AngularGrid.uniform(48, 64, 16), f.samples)
    np.testing.assert_allclose((f + other - 2 * f).samples, 0)
    with pytest.raises(GridMismatch):
        f + ha.product_state(ha.HyperangularState(1, 0, 1), ha.AngularGrid.uniform(8, 8, 8))
    with pytest.raises(GridMismatch):
        ha.AngularGridFunction(grid, np.zeros((2, 2, 2)))
    assert not f.samples.flags.writeable


def test_grid_weights_integrate_measure(grid):
    w = grid.weights()
    exact = (math.pi / 2) * 2 * math.sinh(6.0) * 2 * math.pi
    assert np.sum(w) == pytest.approx(exact, rel=5e-3)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_fd_richardson_orders(r):
    errs = []
    for n in (65, 129):
        x = np.linspace(0, 2, n)
        y = np.sin(3 * x)
        d = ha.fd_first(y, x[1] - x[0], 0, r)
        errs.append(np.max(np.abs(d - 3 * np.cos(3 * x))[8:-8]))
    order = math.log2(errs[0] / errs[1])
    assert order > 2 * (r + 1) - 0.6


def test_fd_second_derivative():
    x = np.linspace(0, 2, 201)
    y = np.exp(x)
    np.testing.assert_allclose(ha.fd_second(y, x[1] - x[0], 0, 2)[10:-10], y[10:-10], rtol=1e-9)


def test_spectral_phi_antiperiodic():
    phi = 2 * math.pi * np.arange(16) / 16
    y = np.exp(2.5j * phi)
    np.testing.assert_allclose(ha.spectral_phi(y, 1), 2.5j * y, atol=1e-12)
    np.testing.assert_allclose(ha.spectral_phi(y, 2), -6.25 * y, atol=1e-11)


def test_l3_eigen(grid):
    for conj in (False, True):
        s = ha.HyperangularState(1, 2, 1, conjugated=conj)
        f = ha.chi_on_grid(s, grid)
        assert ha.eigen_residual(ha.apply_generator("L3", f), f, s.l3_eigenvalue) < 1e-12


def test_n2_eigen_and_rayleigh(grid):
    s = ha.HyperangularState(2, 0, 2)
    f = ha.chi_on_grid(s, grid)
    win = grid.window(beta_margin=8)
    out = ha.apply_N2(f, richardson=3)
    assert ha.eigen_residual(out, f, s.n2_eigenvalue, win) < 1e-3
    assert ha.rayleigh_quotient(out, f, win).real == pytest.approx(3.75, rel=1e-4)


def test_lambda_eigen_library_value(grid):
    s = ha.HyperangularState(1, 1, 2)
    f = ha.product_state(s, grid)
    win = grid.window((math.pi / 8, 7 * math.pi / 8), 8)
    assert ha.eigen_residual(ha.apply_Lambda(f, 3), f, ha.lambda_eigenvalue(2), win) < 1e-3


def test_commutators_on_grid(grid):
    f = ha.product_state(ha.HyperangularState(1, 1, 1), grid)
    win = grid.window((math.pi / 8, 7 * math.pi / 8), 8)
    for g, sign in (("H+", 1), ("H-", -1), ("L+", 1), ("L-", -1)):
        comm = ha.commutator("L3", g, f, 2)
        assert ha.relative_residual(comm, sign * ha.apply_generator(g, f, 2), win) < 1e-6


def test_composed_n2_matches_direct(grid):
    f = ha.product_state(ha.HyperangularState(1, 0, 1), grid)
    win = grid.window((math.pi / 8, 7 * math.pi / 8), 8)
    assert ha.relative_residual(ha.apply_N2_composed(f, 3), ha.apply_N2(f, 3), win) < 5e-3


def test_grid_too_coarse_guard():
    coarse = ha.AngularGrid.uniform(8, 12, 8)
    f = ha.chi_on_grid(ha.HyperangularState(2, 2, 2), coarse)
    with pytest.raises(GridTooCoarse):
        ha.apply_generator("H+", f, tol=1e-6)
    fine = ha.AngularGrid.uniform(4, 128, 8)
    ha.apply_generator("H+", ha.chi_on_grid(ha.HyperangularState(1, 0, 1), fine), richardson=3, tol=1e-3,
                       window=fine.window(beta_margin=16))


@pytest.mark.parametrize("n,k", [(1, 0), (2, 2), (3, 1)])
def test_ladder_coefficients(n, k):
    grid = ha.AngularGrid.uniform(4, 128, 16)
    exact = ha.ladder_coefficient_exact(n, k)
    assert abs(ha.ladder_coefficient(n, k, grid, 3) / exact - 1) < 1e-4
    assert abs(ha.ladder_coefficient(n, k, grid, 3, conjugated=True) / exact - 1) < 1e-4


def test_ladder_needs_n_positive():
    with pytest.raises(DomainError):
        ha.ladder_coefficient(0, 0)


# ---------------------------------------------------------------- regularisation


@given(st.floats(0.01, 2.0))
@settings(max_examples=30)
def test_regularized_norm_m0_against_closed_form(eps):
    assert ha.regularized_norm(0, eps) == pytest.approx(ha.regularized_norm_exact_m0(eps), rel=1e-12)


def test_regularized_norm_sympy():
    # eps * int (1-z^2)^(eps-1) z^2 dz = eps * B(3/2, eps)
    e = sp.Rational(1, 10)
    val = e * sp.gamma(sp.Rational(3, 2)) * sp.gamma(e) / sp.gamma(e + sp.Rational(3, 2))
    assert ha.regularized_norm(1, 0.1) == pytest.approx(float(val), rel=1e-12)


@given(st.floats(0.01, 1.0))
@settings(max_examples=30)
def test_n2_expectation_m0_closed_form(eps):
    assert ha.regularized_n2_expectation(0, eps) == pytest.approx(-0.25 - eps**2 / (1 + 2 * eps), rel=1e-10)


def test_regularization_extrapolates():
    rep = ha.regularization_study(lambda e: ha.regularized_n2_expectation(1, e))
    assert rep.extrapolated == pytest.approx(-0.25, rel=1e-3)
    assert rep.drift < 1e-3
    assert ha.richardson_in_eps([0.2, 0.1], [1.2, 1.1]) == pytest.approx(1.0)


def test_grid_csv(tmp_path, grid):
    small = ha.AngularGrid.uniform(4, 4, 4)
    f = ha.chi_on_grid(ha.HyperangularState(1, 0, 1), small)
    path = tmp_path / "f.csv"
    f.to_csv(path, {"n": 1})
    lines = path.read_text().splitlines()
    assert lines[0] == "# n: 1" and lines[1] == "theta,beta,phi,re,im" and len(lines) == 2 + 64
