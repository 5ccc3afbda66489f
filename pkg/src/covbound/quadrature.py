"""Tensor-product quadrature over the RMS chart.

Every 1-D rule carries its share of the invariant measure
rho^3 sin^2(theta) cosh(beta), so a full integral is ``sum(W * f)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_genlaguerre, roots_jacobi, roots_legendre

from .errors import DomainError
from .kinematics import rms_coords_to_cartesian


@dataclass(frozen=True)
class Rule:
    nodes: np.ndarray
    weights: np.ndarray


def rho_laguerre(npts: int, scale: float, power: int = 1, alpha: float = 0.0) -> Rule:
    """Nodes for int f(rho) rho^3 d rho with x = (rho / scale)^power.

    Exact when f rho^3 d(rho)/dx is a polynomial in x times x^alpha e^(-x).
    """
    if scale <= 0:
        raise DomainError("scale must be positive")
    x, w = roots_genlaguerre(npts, alpha)
    rho = scale * x ** (1.0 / power)
    drho_dx = scale * x ** (1.0 / power - 1.0) / power
    return Rule(rho, w * x**-alpha * np.exp(x) * drho_dx * rho**3)


def theta_legendre(npts: int) -> Rule:
    """Gauss-Legendre in cos(theta) for int g sin^2(theta) d theta."""
    xi, w = roots_legendre(npts)
    theta = np.arccos(xi)
    return Rule(theta, w * np.sin(theta))


def beta_jacobi(npts: int, a: float) -> Rule:
    """Gauss-Jacobi in tanh(beta) with weight (1 - z^2)^a for int g cosh(beta) d beta."""
    z, w = roots_jacobi(npts, a, a)
    return Rule(np.arctanh(z), w * (1.0 - z * z) ** (-1.5 - a))


def beta_uniform(npts: int, beta_max: float) -> Rule:
    beta = np.linspace(-beta_max, beta_max, npts)
    w = np.full(npts, beta[1] - beta[0])
    w[[0, -1]] /= 2
    return Rule(beta, w * np.cosh(beta))


def phi_uniform(npts: int) -> Rule:
    return Rule(2 * math.pi * np.arange(npts) / npts, np.full(npts, 2 * math.pi / npts))


@dataclass(frozen=True, eq=False)
class TensorQuadrature:
    rho: Rule
    theta: Rule
    beta: Rule
    phi: Rule

    def coords(self):
        """Flattened (rho, theta, beta, phi) node coordinates."""
        mesh = np.meshgrid(self.rho.nodes, self.theta.nodes, self.beta.nodes, self.phi.nodes, indexing="ij")
        return tuple(c.ravel() for c in mesh)

    def weights(self) -> np.ndarray:
        w = np.einsum("i,j,k,l->ijkl", self.rho.weights, self.theta.weights, self.beta.weights, self.phi.weights)
        return w.ravel()

    def measure(self) -> np.ndarray:
        rho, theta, beta, _ = self.coords()
        return rho**3 * np.sin(theta) ** 2 * np.cosh(beta)

    def cartesian(self) -> np.ndarray:
        return rms_coords_to_cartesian(*self.coords())

    def integrate(self, values) -> complex:
        return np.sum(self.weights() * np.asarray(values).ravel())

    @property
    def size(self) -> int:
        return self.rho.nodes.size * self.theta.nodes.size * self.beta.nodes.size * self.phi.nodes.size
