"""Self-verification suites backing ``covbound verify``."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import hyperangular as ha
from . import induced as ind
from .errors import ConfigError
from .radial import Coulomb, Oscillator, RadialGrid, coulomb_K, oscillator_K, solve_radial_numeric
from .specfun import legendre_weighted_norm, legendre_weighted_norm_exact
from .wavefn import sample_wavefunction

ACCURATE_RICHARDSON = 3
INTERIOR_THETA = (math.pi / 8, 7 * math.pi / 8)
BETA_MARGIN_FRACTION = 8


@dataclass(frozen=True)
class Check:
    check: str
    residual: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self) | {"pass": self.passed}


def _check(name: str, residual: float, tolerance: float, override: float | None = None) -> Check:
    tol = tolerance if override is None else override
    residual = float(residual)
    return Check(name, residual, tol, bool(np.isfinite(residual) and residual <= tol))


def observed_order(errors, steps) -> float:
    """Least-squares slope of log(error) against log(step)."""
    return float(np.polyfit(np.log(steps), np.log(errors), 1)[0])


def _window(grid: ha.AngularGrid):
    return grid.window(INTERIOR_THETA, max(2, grid.shape[1] // BETA_MARGIN_FRACTION))


# --------------------------------------------------------------------------
# suites


def suite_angular(nodes: int = 128, tol: float | None = None) -> list[Check]:
    out = []
    phi = np.linspace(0, 2 * math.pi, 17)
    out.append(_check("phi_m double-valued", np.max(np.abs(ha.phi_m(3, phi + 2 * math.pi) + ha.phi_m(3, phi))), 1e-14, tol))
    grid_phi = 2 * math.pi * np.arange(64) / 64
    gram = np.array([[np.sum(np.conj(ha.phi_m(a, grid_phi)) * ha.phi_m(b, grid_phi)) * 2 * math.pi / 64
                      for b in range(5)] for a in range(5)])
    out.append(_check("phi_m orthonormal", np.max(np.abs(gram - np.eye(5))), 1e-12, tol))
    worst = max(abs(legendre_weighted_norm(m, n) / legendre_weighted_norm_exact(m, n) - 1)
                for m in range(1, 9) for n in range(1, m + 1))
    out.append(_check("weighted Legendre norm identity m,n<=8", worst, 1e-8, tol))
    xi, w = np.polynomial.legendre.leggauss(40)
    worst = 0.0
    for n in range(0, 4):
        fam = [ha.theta_fn(ell, n, xi) for ell in range(n, 7)]
        g = np.array([[np.sum(w * a * b) for b in fam] for a in fam])
        worst = max(worst, float(np.max(np.abs(g - np.eye(len(fam))))))
    out.append(_check("Theta-hat orthonormal ell<=6", worst, 1e-10, tol))
    grid = ha.AngularGrid.uniform(8, nodes, 32)
    st = ha.HyperangularState(2, 1, 2)
    f = ha.chi_on_grid(st, grid)
    fc = ha.chi_on_grid(ha.HyperangularState(2, 1, 2, conjugated=True), grid)
    win = _window(grid)
    r = ACCURATE_RICHARDSON
    out.append(_check("conjugate family N^2 eigenvalue",
                      ha.eigen_residual(ha.apply_N2(fc, r), fc, st.n2_eigenvalue, win), 1e-4, tol))
    out.append(_check("L3 sign flip under conjugation",
                      ha.eigen_residual(ha.apply_generator("L3", fc), fc, -(st.m + 0.5), win), 1e-10, tol))
    g2 = ha.chi_on_grid(ha.HyperangularState(1, 2, 1), grid)
    lhs = ha.angular_inner_product(f, ha.apply_generator("L3", g2))
    rhs = np.conj(ha.angular_inner_product(g2, ha.apply_generator("L3", f)))
    out.append(_check("L3 hermitian", abs(lhs - rhs), 1e-10, tol))
    return out


def suite_ladder(nodes: int = 128, tol: float | None = None, n_max: int = 3, k_max: int = 3) -> list[Check]:
    out = []
    grid = ha.AngularGrid.uniform(4, nodes, 16)
    worst = worst_c = 0.0
    for n in range(1, n_max + 1):
        for k in range(k_max + 1):
            exact = ha.ladder_coefficient_exact(n, k)
            c = ha.ladder_coefficient(n, k, grid, ACCURATE_RICHARDSON)
            cc = ha.ladder_coefficient(n, k, grid, ACCURATE_RICHARDSON, conjugated=True)
            worst = max(worst, abs(c / exact - 1))
            worst_c = max(worst_c, abs(cc / exact - 1))
    out.append(_check(f"H+ ladder coefficients n<={n_max} k<={k_max}", worst, 1e-4, tol))
    out.append(_check("H- ladder on conjugate family", worst_c, 1e-4, tol))
    errs, steps = [], []
    for nn in (nodes // 4, nodes // 2, nodes):
        g = ha.AngularGrid.uniform(4, nn, 16)
        errs.append(abs(ha.ladder_coefficient(1, 1, g) / ha.ladder_coefficient_exact(1, 1) - 1))
        steps.append(g.h_beta)
    out.append(_check("ladder raw convergence order (|p-2|)", abs(observed_order(errs, steps) - 2), 0.25, tol))
    f = ha.chi_on_grid(ha.HyperangularState(1, 1, 1), grid)
    hh = ha.apply_generator("H-", ha.apply_generator("H+", f, ACCURATE_RICHARDSON), ACCURATE_RICHARDSON)
    target = (ha.ladder_coefficient_exact(1, 1) * np.conj(ha.ladder_coefficient_exact(1, 1))).real
    out.append(_check("H- H+ = (k+1)(2n+k+1)", ha.eigen_residual(hh, f, target, _window(grid)), 1e-4, tol))
    return out


def suite_casimir(nodes: int = 128, tol: float | None = None) -> list[Check]:
    out = []
    r = ACCURATE_RICHARDSON
    grid = ha.AngularGrid.uniform(nodes, nodes, 16)
    win = _window(grid)
    th, be, ph = grid.mesh()
    for st in (ha.HyperangularState(1, 0, 1), ha.HyperangularState(2, 1, 2)):
        f = ha.product_state(st, grid)
        out.append(_check(f"N^2 eigenvalue n={st.n} k={st.k}", ha.eigen_residual(ha.apply_N2(f, r), f, st.n2_eigenvalue, win), 1e-4, tol))
        out.append(_check(f"Lambda eigenvalue ell={st.ell} n={st.n}",
                          ha.eigen_residual(ha.apply_Lambda(f, r), f, st.lambda_eigenvalue, win), 1e-4, tol))
        out.append(_check(f"Lambda composed vs direct ell={st.ell} n={st.n}",
                          ha.relative_residual(ha.apply_Lambda_composed(f, r), ha.apply_Lambda(f, r), win), 1e-4, tol))
        out.append(_check(f"N^2 composed vs direct n={st.n}",
                          ha.relative_residual(ha.apply_N2_composed(f, r), ha.apply_N2(f, r), win), 1e-4, tol))
        for g, sign in (("H+", 1), ("H-", -1)):
            comm = ha.commutator("L3", g, f, r)
            out.append(_check(f"[L3,{g}] = {'+' if sign > 0 else '-'}{g} n={st.n}",
                              ha.relative_residual(comm, sign * ha.apply_generator(g, f, r), win), 1e-4, tol))
    f0 = ha.AngularGridFunction(grid, ha.theta_physical(1, 0, th) * ha.chi_generalized(0, np.tanh(be), ph))
    out.append(_check("Lambda eigenvalue ell=1 n=0 (generalised)",
                      ha.eigen_residual(ha.apply_Lambda(f0, r), f0, ha.lambda_eigenvalue(1), win), 1e-4, tol))
    errs, steps = [], []
    st = ha.HyperangularState(1, 0, 1)
    for nn in (nodes // 4, nodes // 2, nodes):
        g = ha.AngularGrid.uniform(nn, nn, 8)
        f = ha.product_state(st, g)
        errs.append(ha.eigen_residual(ha.apply_N2(f), f, st.n2_eigenvalue, _window(g)))
        steps.append(g.h_beta)
    out.append(_check("N^2 raw convergence order (|p-2|)", abs(observed_order(errs, steps) - 2), 0.25, tol))
    rep = ha.regularization_study(lambda e: ha.regularized_n2_expectation(0, e))
    out.append(_check("regularised <N^2> extrapolates to -1/4", abs(rep.extrapolated + 0.25) / 0.25, 1e-3, tol))
    return out


def suite_radial(tol: float | None = None, points: int | None = None) -> list[Check]:
    out = []
    grid = RadialGrid(points) if points else RadialGrid()
    worst = 0.0
    nodes_ok = True
    norm_err = 0.0
    for Z in (1, 2):
        for ell in range(4):
            for s in solve_radial_numeric(Coulomb(Z), ell, 5 - ell, grid):
                worst = max(worst, abs(s.K_a / coulomb_K(s.n_a, ell, Z) - 1))
                nodes_ok &= s.nodes == s.n_a
                norm_err = max(norm_err, abs(s.norm() - 1))
    out.append(_check("Coulomb K_a Z<=2 N<=5 ell<=3", worst, 1e-6, tol))
    worst = 0.0
    for ell in range(3):
        for s in solve_radial_numeric(Oscillator(1.0), ell, 6, grid):
            worst = max(worst, abs(s.K_a / oscillator_K(s.n_a, ell) - 1))
            nodes_ok &= s.nodes == s.n_a
            norm_err = max(norm_err, abs(s.norm() - 1))
    out.append(_check("oscillator K_a lowest 6", worst, 1e-6, tol))
    out.append(_check("node count equals n_a", 0.0 if nodes_ok else 1.0, 0.5, None))
    out.append(_check("R-hat normalisation", norm_err, 1e-6, tol))
    s = sample_wavefunction(Coulomb(1), 0, ha.HyperangularState(0, 0, 0, eps=0.05))
    out.append(_check("<rho> = 1.5 a0 ground state", abs(s.expectation(s.rho) / 1.5 - 1), 1e-4, tol))
    return out


def suite_induced(tol: float | None = None, samples: int = 1000, seed: int = 0) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    stab = coc = pseudo = 0.0
    for _ in range(samples):
        l1, l2 = ind.random_lorentz(rng), ind.random_lorentz(rng)
        m = ind.random_direction(rng)
        stab = max(stab, ind.stabilization_residual(l1, m))
        coc = max(coc, ind.cocycle_residual(l1, l2, m))
        pseudo = max(pseudo, ind.pseudo_orthogonality_residual(ind.little_group_element(l1, m)),
                     ind.pseudo_orthogonality_residual(ind.canonical_section(m)))
    out.append(_check("stabilisation D m0 = m0", stab, 1e-10, tol))
    out.append(_check("cocycle D(L1 L2, m) = D(L1, m) D(L2, L1^-1 m)", coc, 1e-10, tol))
    out.append(_check("pseudo-orthogonality", pseudo, 1e-10, tol))
    b = demo_bundle()
    lam = demo_generator()
    rep = ind.infinitesimal_check(lam, b, h=1e-3)
    out.append(_check("antisymmetry residual order (|ratio-4|)", abs(rep.antisymmetry_ratio - 4), 0.5, tol))
    out.append(_check("first-order transport residual order (|ratio-4|)", abs(rep.transport_ratio - 4), 0.5, tol))
    before = b.member_norms()
    after = ind.transport_state(ind.boost((0.3, -0.2, 0.4)) @ ind.rotation((1, 1, 0), 0.6), b).member_norms()
    out.append(_check("transport norm drift", float(np.max(np.abs(after - before))), 1e-8, tol))
    return out


def demo_bundle(directions=None) -> ind.BundleFunction:
    """Normalisable test bundle: the (n, k, ell) = (1, 0, 1) ground Coulomb state at each direction."""
    from .quadrature import TensorQuadrature, beta_uniform, phi_uniform, rho_laguerre, theta_legendre
    from .wavefn import cartesian_function, radial_factor

    st = ha.HyperangularState(1, 0, 1)
    F = cartesian_function(st, radial_factor(Coulomb(1), 0, 1))
    q = TensorQuadrature(rho_laguerre(8, 1.0), theta_legendre(6), beta_uniform(97, 12.0), phi_uniform(48))
    if directions is None:
        directions = [ind.M0, ind.direction_from_angles(0.5, 1.0, 2.0), ind.direction_from_angles(-0.4, 2.2, 4.0)]
    return ind.BundleFunction.constant_family(F, directions, modulation=lambda m: 1.0 + 0.25 * m[0], quadrature=q)


def demo_generator() -> np.ndarray:
    """A fixed antisymmetric lambda_{mu nu} mixing rotations and boosts."""
    lam = np.zeros((4, 4))
    for (i, j), v in {(0, 1): 0.3, (0, 3): -0.4, (1, 2): 0.7, (2, 3): 0.2}.items():
        lam[i, j], lam[j, i] = v, -v
    return lam


SUITES: dict[str, Callable[..., list[Check]]] = {
    "angular": suite_angular,
    "ladder": suite_ladder,
    "casimir": suite_casimir,
    "radial": suite_radial,
    "induced": suite_induced,
}


def run_suite(name: str, nodes: int | None = None, tol: float | None = None) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in run_suite(key, nodes, tol)]
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    if name in ("angular", "ladder", "casimir"):
        return SUITES[name](nodes or 128, tol)
    if name == "radial":
        return SUITES[name](tol, nodes)
    return SUITES[name](tol)
