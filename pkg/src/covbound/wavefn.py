"""Full wavefunctions psi = R(rho) Theta(theta) chi(beta, phi) and their samples.

Samples are taken on Gauss nodes matched to each factor, so integrals of
|psi|^2 times low-order polynomials in rho are exact up to round-off.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .hyperangular import HyperangularState, chi, theta_physical
from .kinematics import cartesian_to_rms_coords
from .quadrature import TensorQuadrature, beta_jacobi, phi_uniform, rho_laguerre, theta_legendre
from .radial import Coulomb, Oscillator, coulomb_radial, oscillator_length, oscillator_radial
from .units import ATOMIC, UnitSystem


def evaluate(state: HyperangularState, radial: Callable, rho, theta, beta, phi):
    """psi at RMS coordinates; ``radial`` returns R-hat(rho)."""
    rho = np.asarray(rho, dtype=float)
    return (rho**-0.5 * radial(rho)) * theta_physical(state.ell, state.n, theta) * chi(state, np.tanh(beta), phi)


def cartesian_function(state: HyperangularState, radial: Callable) -> Callable[[np.ndarray], np.ndarray]:
    """psi as a function of Cartesian points (..., 4); zero outside the RMS."""
    def F(x):
        rho, theta, beta, phi = cartesian_to_rms_coords(x)
        inside = np.isfinite(rho)
        out = np.zeros(np.shape(rho), dtype=complex)
        out[inside] = evaluate(state, radial, rho[inside], theta[inside], beta[inside], phi[inside])
        return out
    return F


def radial_factor(potential, n_a: int, ell: int, m: float = 1.0, units: UnitSystem = ATOMIC) -> Callable:
    if isinstance(potential, Coulomb):
        return lambda rho: coulomb_radial(n_a, ell, potential.Z, rho, m, units)
    if isinstance(potential, Oscillator):
        return lambda rho: oscillator_radial(n_a, ell, potential.omega, rho, m, units)
    raise DomainError("closed-form radial factors exist for Coulomb and oscillator only")


def matched_quadrature(potential, n_a: int, state: HyperangularState, m: float = 1.0,
                       units: UnitSystem = ATOMIC, sizes: tuple[int, int, int, int] | None = None) -> TensorQuadrature:
    """Gauss rules that integrate |psi|^2 (and rho-moments) exactly."""
    ell, n = state.ell, state.n
    default = (n_a + ell + 8, ell + 4, state.m + 4, 2 * state.m + 4)
    n_rho, n_theta, n_beta, n_phi = sizes or default
    if isinstance(potential, Coulomb):
        N = n_a + ell + 1
        rule = rho_laguerre(n_rho, N * units.bohr_radius(m) / (2 * potential.Z))
    elif isinstance(potential, Oscillator):
        rule = rho_laguerre(n_rho, oscillator_length(potential.omega, m, units), power=2, alpha=0.5)
    else:
        raise DomainError("matched quadrature needs a Coulomb or oscillator potential")
    nu = state.eps if n == 0 else float(n)
    return TensorQuadrature(rule, theta_legendre(n_theta), beta_jacobi(n_beta, nu - 1.0), phi_uniform(n_phi))


@dataclass(frozen=True, eq=False)
class WavefunctionSamples:
    rho: np.ndarray
    theta: np.ndarray
    beta: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    weight: np.ndarray
    measure: np.ndarray

    def norm(self) -> float:
        return float(np.sum(self.weight * np.abs(self.psi) ** 2))

    def expectation(self, f) -> float:
        p = np.abs(self.psi) ** 2
        return float(np.sum(self.weight * p * f) / np.sum(self.weight * p))

    def columns(self) -> dict[str, np.ndarray]:
        return {
            "rho": self.rho,
            "theta": self.theta,
            "beta": self.beta,
            "phi": self.phi,
            "re": self.psi.real,
            "im": self.psi.imag,
            "weight": self.weight,
            "measure": self.measure,
        }


def sample_wavefunction(potential, n_a: int, state: HyperangularState, m: float = 1.0,
                        units: UnitSystem = ATOMIC, sizes=None, normalize: bool = False) -> WavefunctionSamples:
    """Sample psi on matched Gauss nodes.

    The regularised n = 0 family has norm sqrt(pi) Gamma(1+eps)/Gamma(eps+1/2)
    for m = 0 rather than one; ``normalize`` rescales by the quadrature norm.
    """
    q = matched_quadrature(potential, n_a, state, m, units, sizes)
    rho, theta, beta, phi = q.coords()
    psi = evaluate(state, radial_factor(potential, n_a, state.ell, m, units), rho, theta, beta, phi)
    w = q.weights()
    if normalize:
        psi = psi / np.sqrt(np.sum(w * np.abs(psi) ** 2))
    return WavefunctionSamples(rho, theta, beta, phi, psi, w, q.measure())


def expectation_from_columns(rho, re, im, weight, power: float = 1.0) -> float:
    """<rho^power> from emitted sample columns."""
    p = np.asarray(re) ** 2 + np.asarray(im) ** 2
    w = np.asarray(weight)
    return float(np.sum(w * p * np.asarray(rho) ** power) / np.sum(w * p))


def ground_state_moments(eps: float, powers=(1.0, 2.0, -1.0), Z: int = 1) -> tuple[float, ...]:
    """<rho^p> for the regularised ground Coulomb state (n = k = ell = 0)."""
    s = sample_wavefunction(Coulomb(Z), 0, HyperangularState(0, 0, 0, eps=eps))
    return tuple(s.expectation(s.rho**p) for p in powers)

