"""Radial eigenproblem: closed-form Coulomb/oscillator families and a
finite-difference Sturm-Liouville solver for arbitrary potentials.

The solver works with u = rho * R_hat, which turns the radial operator into
-(hbar^2/2m) u'' + [hbar^2 l(l+1)/(2 m rho^2) + V] u on a uniform Dirichlet
grid.  Eigenvalues come from Sturm-sequence bisection on the symmetric
tridiagonal matrix; three nested grids (h, h/2, h/4) give two Richardson
extrapolants whose difference is the reported error estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigError, ConvergenceError, DomainError
from .specfun import laguerre
from .units import ATOMIC, UnitSystem


# --------------------------------------------------------------------------
# potentials


@dataclass(frozen=True)
class Coulomb:
    Z: int = 1

    def __post_init__(self):
        if int(self.Z) != self.Z or self.Z < 1:
            raise ConfigError(f"Z must be a positive integer, got {self.Z}")

    def __call__(self, rho, units: UnitSystem = ATOMIC):
        return -self.Z * units.e2 / np.asarray(rho, dtype=float)


@dataclass(frozen=True)
class Oscillator:
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigError(f"omega must be positive, got {self.omega}")

    def potential(self, rho, m: float):
        return 0.5 * m * self.omega**2 * np.asarray(rho, dtype=float) ** 2


@dataclass(frozen=True, eq=False)
class Tabulated:
    rho: np.ndarray
    values: np.ndarray
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if rho.ndim != 1 or rho.shape != vals.shape or rho.size < 4:
            raise ConfigError("tabulated potential needs matching 1-D arrays with at least 4 points")
        if np.any(np.diff(rho) <= 0) or rho[0] < 0:
            raise ConfigError("tabulated rho grid must be nonnegative and strictly increasing")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_spline", CubicSpline(rho, vals))

    def __call__(self, rho):
        rho = np.clip(np.asarray(rho, dtype=float), self.rho[0], self.rho[-1])
        return self._spline(rho)


PotentialSpec = Union[Coulomb, Oscillator, Tabulated]


# --------------------------------------------------------------------------
# closed forms


def coulomb_K(n_a: int, ell: int, Z: int = 1, m: float = 1.0, units: UnitSystem = ATOMIC) -> float:
    """-Z^2 m e^4 / (2 hbar^2 N^2) with N = n_a + ell + 1."""
    if n_a < 0 or ell < 0:
        raise DomainError("quantum numbers must be nonnegative")
    N = n_a + ell + 1
    return -(Z**2) * m * units.e2**2 / (2 * units.hbar**2 * N**2)


def coulomb_radial(n_a: int, ell: int, Z: int, rho, m: float = 1.0, units: UnitSystem = ATOMIC):
    """Normalised hydrogen radial function, int R^2 rho^2 d rho = 1."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("rho must be nonnegative")
    N = n_a + ell + 1
    a0 = units.bohr_radius(m)
    x = 2 * Z * rho / (N * a0)
    norm = math.sqrt((2 * Z / (N * a0)) ** 3 * math.factorial(n_a) / (2 * N * math.factorial(N + ell)))
    return norm * np.exp(-x / 2) * x**ell * laguerre(n_a, 2 * ell + 1, x)


def oscillator_K(n_a: int, ell: int, omega: float = 1.0, units: UnitSystem = ATOMIC) -> float:
    """hbar omega (ell + 2 n_a + 3/2)."""
    if n_a < 0 or ell < 0:
        raise DomainError("quantum numbers must be nonnegative")
    return units.hbar * omega * (ell + 2 * n_a + 1.5)


def oscillator_length(omega: float, m: float = 1.0, units: UnitSystem = ATOMIC) -> float:
    return math.sqrt(units.hbar / (m * omega))


def oscillator_radial(n_a: int, ell: int, omega: float, rho, m: float = 1.0, units: UnitSystem = ATOMIC):
    """x^(ell/2) exp(-x/2) L_{n_a}^{ell+1/2}(x), x = m omega rho^2 / hbar, normalised."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("rho must be nonnegative")
    b = oscillator_length(omega, m, units)
    x = (rho / b) ** 2
    norm = math.sqrt(2 * math.factorial(n_a) / (b**3 * math.gamma(n_a + ell + 1.5)))
    return norm * x ** (ell / 2) * np.exp(-x / 2) * laguerre(n_a, ell + 0.5, x)


# --------------------------------------------------------------------------
# numerical solver


@dataclass(frozen=True, eq=False)
class RadialSolution:
    K_a: float
    n_a: int
    ell: int
    rho: np.ndarray
    R_hat: np.ndarray
    error_estimate: float = 0.0

    @property
    def nodes(self) -> int:
        return count_nodes(self.rho * self.R_hat)

    def norm(self) -> float:
        return float(np.trapezoid(self.R_hat**2 * self.rho**2, self.rho))


@dataclass(frozen=True)
class RadialGrid:
    """Grid controls: ``points`` interior nodes on the coarsest of three grids."""

    points: int = 20000
    rho_max: float | None = None
    tol: float = 1e-6

    def __post_init__(self):
        if self.points < 16:
            raise ConfigError("radial grid needs at least 16 points")
        if self.rho_max is not None and not self.rho_max > 0:
            raise ConfigError("rho_max must be positive")
        if not self.tol > 0:
            raise ConfigError("tolerance must be positive")


def count_nodes(u, rel_floor: float = 1e-7) -> int:
    """Sign changes of ``u`` ignoring samples below ``rel_floor * max|u|``."""
    u = np.asarray(u, dtype=float)
    keep = u[np.abs(u) > rel_floor * np.max(np.abs(u))]
    return int(np.count_nonzero(np.signbit(keep[1:]) != np.signbit(keep[:-1])))


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``."""
    diag = np.asarray(diag, dtype=float)
    off2 = np.asarray(off, dtype=float) ** 2
    count = 0
    q = diag[0] - x
    tiny = np.finfo(float).tiny
    for i in range(diag.size):
        if i:
            q = diag[i] - x - off2[i - 1] / (q if q != 0 else tiny)
        if q < 0:
            count += 1
    return count


def _check_collapse(v: Callable, scale: float) -> None:
    rho = scale * 10.0 ** -np.arange(2, 10)
    with np.errstate(all="ignore"):
        s = rho**2 * np.asarray(v(rho), dtype=float)
    if not np.all(np.isfinite(s[:-1])):
        return
    if s[-2] < 0 and s[-3] < 0 and s[-2] < 2 * s[-3] and s[-3] < 2 * s[-4]:
        raise DomainError("potential is unbounded below faster than -1/rho^2; no ground state")


def _tridiagonal(v: Callable, ell: int, rho_max: float, n: int, kin: float):
    h = rho_max / (n + 1)
    rho = h * np.arange(1, n + 1)
    diag = 2 * kin / h**2 + kin * ell * (ell + 1) / rho**2 + v(rho)
    off = np.full(n - 1, -kin / h**2)
    return rho, diag, off


def _solve_grid(v, ell, count, rho_max, n, kin, vectors):
    rho, diag, off = _tridiagonal(v, ell, rho_max, n, kin)
    if vectors:
        w, vec = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1), lapack_driver="stebz")
        return rho, w, vec
    w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1), lapack_driver="stebz")
    return rho, w, None


def _scales(V: PotentialSpec, ell: int, count: int, m: float, units: UnitSystem):
    """Return (potential callable, natural length, default rho_max)."""
    if isinstance(V, Coulomb):
        a = units.bohr_radius(m) / V.Z
        N = count + ell
        return (lambda r: V(r, units)), a, a * max(40.0, 6.0 * N**2, 120.0 + 20.0 * ell)
    if isinstance(V, Oscillator):
        b = oscillator_length(V.omega, m, units)
        return (lambda r: V.potential(r, m)), b, b * max(12.0, 2.0 * math.sqrt(4 * count + 2 * ell + 3) + 6.0)
    if isinstance(V, Tabulated):
        return V, float(V.rho[-1]) / 10, float(V.rho[-1])
    if callable(V):
        return V, 1.0, None
    raise ConfigError(f"unsupported potential {V!r}")


def solve_radial_numeric(V: PotentialSpec, ell: int, count: int, grid: RadialGrid | None = None,
                         m: float = 1.0, units: UnitSystem = ATOMIC) -> list[RadialSolution]:
    """Lowest ``count`` eigenpairs of the radial equation, Richardson-extrapolated.

    Raises :class:`ConvergenceError` when the difference between the two
    extrapolants exceeds ``grid.tol`` relative to the eigenvalue.
    """
    if count < 1 or ell < 0:
        raise DomainError("need count >= 1 and ell >= 0")
    grid = grid or RadialGrid()
    v, scale, default_max = _scales(V, ell, count, m, units)
    rho_max = grid.rho_max or default_max
    if rho_max is None:
        raise ConfigError("rho_max is required for a user-supplied callable potential")
    _check_collapse(v, scale)
    kin = units.hbar**2 / (2 * m)

    sizes = (grid.points, 2 * grid.points + 1, 4 * grid.points + 3)
    evs = []
    for i, n in enumerate(sizes):
        rho, w, vec = _solve_grid(v, ell, count, rho_max, n, kin, vectors=i == len(sizes) - 1)
        evs.append(w)
    r1 = (4 * evs[1] - evs[0]) / 3
    r2 = (4 * evs[2] - evs[1]) / 3
    err = np.abs(r2 - r1)
    rel = err / np.maximum(np.abs(r2), np.finfo(float).tiny)
    if np.any(rel > grid.tol):
        worst = int(np.argmax(rel))
        raise ConvergenceError(
            f"eigenvalue {worst} error estimate {rel[worst]:.2e} exceeds tolerance {grid.tol:.2e}"
        )

    h = rho[1] - rho[0]
    out = []
    for j in range(count):
        u = vec[:, j] / math.sqrt(h * np.sum(vec[:, j] ** 2))
        first = u[np.argmax(np.abs(u) > 1e-3 * np.max(np.abs(u)))]
        u = u if first > 0 else -u
        out.append(RadialSolution(float(r2[j]), j, ell, rho.copy(), u / rho, float(err[j])))
    return out


def box_eigenvalues(ell0_count: int, rho_max: float, m: float = 1.0, units: UnitSystem = ATOMIC) -> np.ndarray:
    """Continuum particle-in-a-box levels (hbar pi k)^2 / (2 m L^2) for ell = 0."""
    k = np.arange(1, ell0_count + 1)
    return (units.hbar * math.pi * k) ** 2 / (2 * m * rho_max**2)
