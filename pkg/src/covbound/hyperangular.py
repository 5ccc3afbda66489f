"""Hyperangular eigenfunctions and grid-level generator algebra.

States are labelled by the O(2,1) index n, the ladder step k (so m = n + k)
and the O(3,1) index ell.  Functions of (theta, beta, phi) live on a tensor
grid; theta and beta derivatives are central finite differences (optionally
Richardson-extrapolated across strides 1, 2, 4 of the same stencil) and phi
derivatives are spectral.  Half-integer phi modes are antiperiodic, so the
spectral derivative demodulates by exp(-i phi / 2) first.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError, GridMismatch, GridTooCoarse, LegendreIndexError
from .specfun import assoc_legendre_p, b_norm_constant, legendre_p

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
DEFAULT_EPS_SEQUENCE = (0.2, 0.1, 0.05, 0.025)


# --------------------------------------------------------------------------
# closed-form families


@dataclass(frozen=True)
class HyperangularState:
    n: int
    k: int
    ell: int
    conjugated: bool = False
    eps: float | None = None

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise DomainError("n and k must be nonnegative")
        if self.ell < self.n:
            raise LegendreIndexError(f"ell={self.ell} must be >= n={self.n}")
        if self.n == 0:
            if self.eps is None or not self.eps > 0:
                raise DomainError("n = 0 states need a regularisation eps > 0")
        elif self.eps is not None:
            raise DomainError("eps is only meaningful for n = 0")

    @property
    def m(self) -> int:
        return self.n + self.k

    @property
    def n2_eigenvalue(self) -> float:
        return self.n**2 - 0.25

    @property
    def lambda_eigenvalue(self) -> float:
        return lambda_eigenvalue(self.ell)

    @property
    def l3_eigenvalue(self) -> float:
        val = self.m + 0.5
        return -val if self.conjugated else val


def lambda_eigenvalue(ell: int) -> float:
    """Eigenvalue of the O(3,1) Casimir on Theta_{ell n} times an N^2 eigenfunction."""
    return ell * (ell + 1) - 0.75


def phi_m(m: int, phi):
    """Normalised half-integer mode exp(i (m + 1/2) phi) / sqrt(2 pi)."""
    if m < 0:
        raise DomainError("negative m is represented through conjugation")
    out = INV_SQRT_2PI * np.exp(1j * (m + 0.5) * np.asarray(phi, dtype=float))
    return complex(out) if np.ndim(out) == 0 else out


def b_hat(m: int, n: int, zeta):
    return b_norm_constant(m, n) * assoc_legendre_p(m, n, zeta)


def b_hat_regularized(m: int, eps: float, zeta):
    """sqrt(eps) (1 - z^2)^(eps/2) P_m(z), the regularised n = 0 family."""
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    zeta = np.asarray(zeta, dtype=float)
    out = math.sqrt(eps) * (1.0 - zeta * zeta) ** (eps / 2) * legendre_p(m, zeta)
    return float(out) if np.ndim(out) == 0 else out


def theta_norm_constant(ell: int, n: int) -> float:
    return math.sqrt((2 * ell + 1) / 2 * math.factorial(ell + n) / math.factorial(ell - n))


def theta_fn(ell: int, n: int, xi):
    """Theta-hat: P_ell^{-n} normalised to one on (-1, 1) with unit weight."""
    if ell < n:
        raise LegendreIndexError(f"ell={ell} must be >= n={n}")
    return theta_norm_constant(ell, n) * assoc_legendre_p(ell, n, xi)


def theta_physical(ell: int, n: int, theta):
    """Theta(theta) = sin(theta)^(-1/2) Theta-hat(cos theta)."""
    theta = np.asarray(theta, dtype=float)
    return np.sin(theta) ** -0.5 * theta_fn(ell, n, np.cos(theta))


def _beta_profile(state: HyperangularState, zeta):
    zeta = np.asarray(zeta, dtype=float)
    if state.n == 0:
        b = b_hat_regularized(state.m, state.eps, zeta)
    else:
        b = b_hat(state.m, state.n, zeta)
    return (1.0 - zeta * zeta) ** 0.25 * b


def chi(state: HyperangularState, zeta, phi):
    """O(2,1) eigenfunction (1 - z^2)^(1/4) B(z) Phi_m(phi), conjugated on request."""
    out = _beta_profile(state, zeta) * phi_m(state.m, phi)
    return np.conj(out) if state.conjugated else out


def chi_generalized(m: int, zeta, phi, conjugated: bool = False):
    """Pointwise n = 0 eigenfunction (1 - z^2)^(1/4) P_m(z) Phi_m (not normalisable)."""
    zeta = np.asarray(zeta, dtype=float)
    out = (1.0 - zeta * zeta) ** 0.25 * legendre_p(m, zeta) * phi_m(m, phi)
    return np.conj(out) if conjugated else out


# --------------------------------------------------------------------------
# grids


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)
    dx = np.diff(x)
    w[0] = dx[0] / 2
    w[-1] = dx[-1] / 2
    w[1:-1] = (x[2:] - x[:-2]) / 2
    return w


@dataclass(frozen=True, eq=False)
class AngularGrid:
    theta: np.ndarray
    beta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        for name in ("theta", "beta", "phi"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.ndim != 1 or arr.size < 4:
                raise DomainError(f"{name} axis needs at least 4 nodes")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.theta[0] <= 0 or self.theta[-1] >= math.pi:
            raise DomainError("theta nodes must lie strictly inside (0, pi)")
        for name in ("theta", "beta"):
            d = np.diff(getattr(self, name))
            if np.any(d <= 0) or not np.allclose(d, d[0], rtol=1e-9, atol=0):
                raise DomainError(f"{name} nodes must be uniform and increasing")

    @classmethod
    def uniform(cls, n_theta=128, n_beta=128, n_phi=128, beta_max=6.0, theta_margin=1e-3):
        return cls(
            np.linspace(theta_margin, math.pi - theta_margin, n_theta),
            np.linspace(-beta_max, beta_max, n_beta),
            2 * math.pi * np.arange(n_phi) / n_phi,
        )

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.theta.size, self.beta.size, self.phi.size)

    @property
    def h_theta(self) -> float:
        return float(self.theta[1] - self.theta[0])

    @property
    def h_beta(self) -> float:
        return float(self.beta[1] - self.beta[0])

    def mesh(self):
        return np.meshgrid(self.theta, self.beta, self.phi, indexing="ij")

    def weights(self) -> np.ndarray:
        """Quadrature weights including the invariant factor sin^2(theta) cosh(beta)."""
        wt = _trapezoid_weights(self.theta) * np.sin(self.theta) ** 2
        wb = _trapezoid_weights(self.beta) * np.cosh(self.beta)
        wp = np.full(self.phi.size, 2 * math.pi / self.phi.size)
        return wt[:, None, None] * wb[None, :, None] * wp[None, None, :]

    def window(self, theta_range=(0.0, math.pi), beta_margin: int = 0) -> np.ndarray:
        """Boolean mask selecting an interior sub-box of the grid."""
        t = (self.theta >= theta_range[0]) & (self.theta <= theta_range[1])
        b = np.zeros(self.beta.size, dtype=bool)
        b[beta_margin : self.beta.size - beta_margin] = True
        return t[:, None, None] & b[None, :, None] & np.ones(self.phi.size, dtype=bool)[None, None, :]

    def same_as(self, other: "AngularGrid") -> bool:
        return self is other or (
            self.shape == other.shape
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.beta, other.beta)
            and np.array_equal(self.phi, other.phi)
        )


@dataclass(frozen=True, eq=False)
class AngularGridFunction:
    grid: AngularGrid
    samples: np.ndarray
    antiperiodic: bool = True

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != self.grid.shape:
            raise GridMismatch(f"samples shape {s.shape} != grid shape {self.grid.shape}")
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_callable(cls, grid: AngularGrid, fn: Callable, antiperiodic: bool = True):
        th, be, ph = grid.mesh()
        return cls(grid, np.broadcast_to(fn(th, be, ph), grid.shape), antiperiodic)

    def _check(self, other: "AngularGridFunction"):
        if not self.grid.same_as(other.grid):
            raise GridMismatch("grid functions live on different grids")

    def _new(self, samples):
        return AngularGridFunction(self.grid, samples, self.antiperiodic)

    def __add__(self, other):
        self._check(other)
        return self._new(self.samples + other.samples)

    def __sub__(self, other):
        self._check(other)
        return self._new(self.samples - other.samples)

    def __mul__(self, c):
        return self._new(self.samples * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.samples)

    def conj(self):
        return self._new(np.conj(self.samples))

    def to_csv(self, path, metadata: dict | None = None) -> None:
        th, be, ph = self.grid.mesh()
        with open(path, "w", newline="") as fh:
            for key, val in (metadata or {}).items():
                fh.write(f"# {key}: {val}\n")
            fh.write("theta,beta,phi,re,im\n")
            for row in zip(th.ravel(), be.ravel(), ph.ravel(), self.samples.real.ravel(), self.samples.imag.ravel()):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def product_state(state: HyperangularState, grid: AngularGrid) -> AngularGridFunction:
    """Theta_{ell n}(theta) chi_{n k}(tanh beta, phi) sampled on ``grid``."""
    th, be, ph = grid.mesh()
    vals = theta_physical(state.ell, state.n, th) * chi(state, np.tanh(be), ph)
    return AngularGridFunction(grid, vals)


def chi_on_grid(state: HyperangularState, grid: AngularGrid) -> AngularGridFunction:
    """chi_{n k} extended constantly in theta."""
    _, be, ph = grid.mesh()
    return AngularGridFunction(grid, chi(state, np.tanh(be), ph))


# --------------------------------------------------------------------------
# derivatives


def _take(y, sl, axis):
    idx = [slice(None)] * y.ndim
    idx[axis] = sl
    return y[tuple(idx)]


def _assign(out, sl, axis, val):
    idx = [slice(None)] * out.ndim
    idx[axis] = sl
    out[tuple(idx)] = val


def _d1_stride(y, h, axis, s):
    out = np.gradient(y, h, axis=axis, edge_order=2)
    if s > 1:
        _assign(out, slice(s, -s), axis, (_take(y, slice(2 * s, None), axis) - _take(y, slice(None, -2 * s), axis)) / (2 * s * h))
    return out


def _d2_stride(y, h, axis, s):
    n = y.shape[axis]
    out = np.empty_like(y)
    c = _take(y, slice(1, -1), axis)
    _assign(out, slice(1, -1), axis, (_take(y, slice(2, None), axis) - 2 * c + _take(y, slice(None, -2), axis)) / h**2)
    y0, y1, y2, y3 = (_take(y, slice(i, i + 1), axis) for i in range(4))
    _assign(out, slice(0, 1), axis, (2 * y0 - 5 * y1 + 4 * y2 - y3) / h**2)
    z0, z1, z2, z3 = (_take(y, slice(n - 1 - i, n - i), axis) for i in range(4))
    _assign(out, slice(n - 1, n), axis, (2 * z0 - 5 * z1 + 4 * z2 - z3) / h**2)
    if s > 1:
        mid = _take(y, slice(s, -s), axis)
        _assign(out, slice(s, -s), axis, (_take(y, slice(2 * s, None), axis) - 2 * mid + _take(y, slice(None, -2 * s), axis)) / (s * h) ** 2)
    return out


def _richardson(stencil, y, h, axis, levels: int):
    table = [stencil(y, h, axis, 2**j) for j in range(levels + 1)]
    for lev in range(1, levels + 1):
        fac = 4.0**lev
        table = [(fac * table[j] - table[j + 1]) / (fac - 1) for j in range(len(table) - 1)]
    return table[0]


def fd_first(y, h, axis, richardson: int = 0):
    """Central first derivative; ``richardson`` extra levels over strides 2, 4, ..."""
    return _richardson(_d1_stride, y, h, axis, richardson)


def fd_second(y, h, axis, richardson: int = 0):
    return _richardson(_d2_stride, y, h, axis, richardson)


def spectral_phi(y, order: int = 1, axis: int = -1, antiperiodic: bool = True):
    """Exact derivative of a trigonometric interpolant along the phi axis."""
    n = y.shape[axis]
    phi = 2 * math.pi * np.arange(n) / n
    shape = [1] * y.ndim
    shape[axis] = n
    k = np.fft.fftfreq(n, d=1.0 / n)
    if antiperiodic:
        carrier = np.exp(-0.5j * phi).reshape(shape)
        y = y * carrier
        k = k + 0.5
    elif n % 2 == 0 and order % 2 == 1:
        k[n // 2] = 0.0
    spec = np.fft.fft(y, axis=axis) * ((1j * k) ** order).reshape(shape)
    out = np.fft.ifft(spec, axis=axis)
    return out / carrier if antiperiodic else out


class Generator(str, enum.Enum):
    L3 = "L3"
    H_PLUS = "H+"
    H_MINUS = "H-"
    A3 = "A3"
    L_PLUS = "L+"
    L_MINUS = "L-"
    L1 = "L1"
    L2 = "L2"
    A1 = "A1"
    A2 = "A2"


class _Diff:
    """Cached partial derivatives of one grid function."""

    def __init__(self, f: AngularGridFunction, richardson: int):
        self.f = f
        self.r = richardson
        self._cache: dict[str, np.ndarray] = {}

    def __getitem__(self, key: str) -> np.ndarray:
        if key not in self._cache:
            y, g = self.f.samples, self.f.grid
            if key == "t":
                val = fd_first(y, g.h_theta, 0, self.r)
            elif key == "b":
                val = fd_first(y, g.h_beta, 1, self.r)
            elif key == "p":
                val = spectral_phi(y, 1, 2, self.f.antiperiodic)
            elif key == "tt":
                val = fd_second(y, g.h_theta, 0, self.r)
            elif key == "bb":
                val = fd_second(y, g.h_beta, 1, self.r)
            elif key == "pp":
                val = spectral_phi(y, 2, 2, self.f.antiperiodic)
            else:
                raise KeyError(key)
            self._cache[key] = val
        return self._cache[key]


def _coefficients(grid: AngularGrid):
    """Operator coefficients as broadcastable (theta, beta, phi) factors."""
    th = grid.theta[:, None, None]
    be = grid.beta[None, :, None]
    ph = grid.phi[None, None, :]
    return {
        "cot": 1.0 / np.tan(th),
        "ch": np.cosh(be),
        "sh": np.sinh(be),
        "th": np.tanh(be),
        "e+": np.exp(1j * ph),
        "e-": np.exp(-1j * ph),
        "sin": np.sin(th),
    }


def _apply(g: Generator, f: AngularGridFunction, richardson: int) -> np.ndarray:
    d = _Diff(f, richardson)
    c = _coefficients(f.grid)
    if g is Generator.L3:
        return -1j * d["p"]
    if g is Generator.H_PLUS:
        return c["e+"] * (-1j * d["b"] + c["th"] * d["p"])
    if g is Generator.H_MINUS:
        return c["e-"] * (-1j * d["b"] - c["th"] * d["p"])
    if g is Generator.A3:
        return -1j * (c["cot"] * c["ch"] * d["b"] - c["sh"] * d["t"])
    if g is Generator.L_PLUS:
        return c["e+"] * (c["ch"] * d["t"] - c["sh"] * c["cot"] * d["b"] + 1j * c["cot"] / c["ch"] * d["p"])
    if g is Generator.L_MINUS:
        return c["e-"] * (-c["ch"] * d["t"] + c["sh"] * c["cot"] * d["b"] + 1j * c["cot"] / c["ch"] * d["p"])
    if g in (Generator.L1, Generator.L2):
        lp, lm = _apply(Generator.L_PLUS, f, richardson), _apply(Generator.L_MINUS, f, richardson)
        return (lp + lm) / 2 if g is Generator.L1 else (lp - lm) / 2j
    hp, hm = _apply(Generator.H_PLUS, f, richardson), _apply(Generator.H_MINUS, f, richardson)
    return (hp + hm) / 2 if g is Generator.A1 else (hp - hm) / 2j


def _guarded(compute, f: AngularGridFunction, richardson: int, tol: float | None, window):
    out = compute(richardson)
    if tol is not None:
        alt = compute(richardson + 1)
        mask = np.ones(f.grid.shape, dtype=bool) if window is None else window
        scale = max(float(np.max(np.abs(out[mask]))), float(np.max(np.abs(f.samples[mask]))), 1e-300)
        est = float(np.max(np.abs(out[mask] - alt[mask]))) / scale
        if est > tol:
            raise GridTooCoarse(f"estimated truncation error {est:.3e} exceeds tolerance {tol:.3e}")
    return f._new(out)


def apply_generator(g, f: AngularGridFunction, richardson: int = 0, tol: float | None = None, window=None):
    """Apply one of L3, H+, H-, A3, L+, L- (or L1, L2, A1, A2) on the grid.

    With ``tol`` set, the result is compared against the next Richardson level
    and :class:`GridTooCoarse` is raised if they differ by more than ``tol``
    (relative, max norm over ``window``).
    """
    g = Generator(g)
    return _guarded(lambda r: _apply(g, f, r), f, richardson, tol, window)


def _n2(f: AngularGridFunction, r: int) -> np.ndarray:
    d = _Diff(f, r)
    c = _coefficients(f.grid)
    return d["bb"] + c["th"] * d["b"] - d["pp"] / c["ch"] ** 2


def apply_N2(f: AngularGridFunction, richardson: int = 0, tol: float | None = None, window=None):
    """O(2,1) Casimir d_bb + tanh(b) d_b - sech^2(b) d_pp."""
    return _guarded(lambda r: _n2(f, r), f, richardson, tol, window)


def _lambda(f: AngularGridFunction, r: int) -> np.ndarray:
    d = _Diff(f, r)
    c = _coefficients(f.grid)
    return -d["tt"] - 2 * c["cot"] * d["t"] + _n2(f, r) / c["sin"] ** 2


def apply_Lambda(f: AngularGridFunction, richardson: int = 0, tol: float | None = None, window=None):
    """O(3,1) Casimir -d_tt - 2 cot(t) d_t + N^2 / sin^2(t)."""
    return _guarded(lambda r: _lambda(f, r), f, richardson, tol, window)


def _compose(f, r, *names):
    out = f
    for g in reversed(names):
        out = apply_generator(g, out, r)
    return out


def apply_N2_composed(f: AngularGridFunction, richardson: int = 0) -> AngularGridFunction:
    """L3^2 - (H+H- + H-H+)/2 built from first-order generators."""
    l3 = _compose(f, richardson, "L3", "L3")
    hh = _compose(f, richardson, "H+", "H-") + _compose(f, richardson, "H-", "H+")
    return l3 - 0.5 * hh


def apply_Lambda_composed(f: AngularGridFunction, richardson: int = 0) -> AngularGridFunction:
    """L^2 - A^2 from the ladder and third-component generators."""
    ll = _compose(f, richardson, "L3", "L3") + 0.5 * (_compose(f, richardson, "L+", "L-") + _compose(f, richardson, "L-", "L+"))
    aa = _compose(f, richardson, "A3", "A3") + 0.5 * (_compose(f, richardson, "H+", "H-") + _compose(f, richardson, "H-", "H+"))
    return ll - aa


def commutator(a, b, f: AngularGridFunction, richardson: int = 0) -> AngularGridFunction:
    return _compose(f, richardson, a, b) - _compose(f, richardson, b, a)


# --------------------------------------------------------------------------
# quadrature-based measurements


def angular_inner_product(f: AngularGridFunction, g: AngularGridFunction, window=None) -> complex:
    """Quadrature of conj(f) g sin^2(theta) cosh(beta)."""
    f._check(g)
    w = f.grid.weights()
    if window is not None:
        w = np.where(window, w, 0.0)
    return complex(np.sum(np.conj(f.samples) * g.samples * w))


def relative_residual(a: AngularGridFunction, b: AngularGridFunction, window=None) -> float:
    """Weighted L2 norm of a - b relative to that of b."""
    diff = a - b
    return math.sqrt(angular_inner_product(diff, diff, window).real / angular_inner_product(b, b, window).real)


def eigen_residual(op_f: AngularGridFunction, f: AngularGridFunction, eigenvalue, window=None) -> float:
    return relative_residual(op_f, eigenvalue * f, window)


def rayleigh_quotient(op_f: AngularGridFunction, f: AngularGridFunction, window=None) -> complex:
    return angular_inner_product(f, op_f, window) / angular_inner_product(f, f, window)


def ladder_coefficient_exact(n: int, k: int) -> complex:
    return 1j * math.sqrt((k + 1) * (2 * n + k + 1))


def ladder_coefficient(n: int, k: int, grid: AngularGrid | None = None, richardson: int = 0,
                       conjugated: bool = False, tol: float | None = None) -> complex:
    """Measured c with H+ chi_{n,k} = c chi_{n,k+1} (H- on the conjugate family)."""
    if n < 1:
        raise DomainError("ladder coefficients are defined for n >= 1")
    grid = grid or AngularGrid.uniform(n_theta=4)
    lo = chi_on_grid(HyperangularState(n, k, n, conjugated), grid)
    hi = chi_on_grid(HyperangularState(n, k + 1, n, conjugated), grid)
    raised = apply_generator("H-" if conjugated else "H+", lo, richardson, tol)
    return angular_inner_product(hi, raised) / angular_inner_product(hi, hi)


# --------------------------------------------------------------------------
# n = 0 regularisation


def _jacobi_rule(eps: float, npts: int):
    x, w = roots_jacobi(npts, eps - 1.0, eps - 1.0)
    return x, w


def regularized_norm(m: int, eps: float, npts: int | None = None) -> float:
    """eps * integral (1 - z^2)^(eps - 1) P_m(z)^2 dz by Gauss-Jacobi (exact)."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    x, w = _jacobi_rule(eps, npts or m + 2)
    return float(eps * np.sum(w * legendre_p(m, x) ** 2))


def regularized_norm_exact_m0(eps: float) -> float:
    return math.sqrt(math.pi) * math.gamma(1 + eps) / math.gamma(eps + 0.5)


def _legendre_derivative(m: int, x):
    if m == 0:
        return np.zeros_like(x)
    return m * (x * legendre_p(m, x) - legendre_p(m - 1, x)) / (x * x - 1.0)


def regularized_n2_expectation(m: int, eps: float, npts: int | None = None) -> float:
    """<N^2> on the regularised family via the integrated-by-parts quadratic form."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    x, w = _jacobi_rule(eps, npts or m + 4)
    p = legendre_p(m, x)
    dp = _legendre_derivative(m, x)
    a = 0.25 + eps / 2
    grad = (1 - x * x) * dp - 2 * a * x * p
    num = np.sum(w * (-(grad**2) + (m + 0.5) ** 2 * (1 - x * x) * p * p))
    return float(num / np.sum(w * p * p))


def richardson_in_eps(eps_values, values, order: int | None = None) -> float:
    """Polynomial (Neville) extrapolation of ``values(eps)`` to eps = 0."""
    eps_values = np.asarray(eps_values, dtype=float)
    values = np.asarray(values, dtype=float)
    if order is not None:
        eps_values, values = eps_values[-(order + 1):], values[-(order + 1):]
    p = list(values)
    npts = len(p)
    for lev in range(1, npts):
        for i in range(npts - lev):
            e0, e1 = eps_values[i], eps_values[i + lev]
            p[i] = (e0 * p[i + 1] - e1 * p[i]) / (e0 - e1)
    return float(p[0])


@dataclass(frozen=True)
class RegularizationReport:
    eps: tuple[float, ...]
    values: tuple[float, ...]
    extrapolated: float
    extrapolated_subset: float
    drift: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "drift", abs(self.extrapolated - self.extrapolated_subset) / max(abs(self.extrapolated), 1e-300)
        )


def regularization_study(quantity: Callable[[float], float], eps_values=DEFAULT_EPS_SEQUENCE) -> RegularizationReport:
    """Evaluate ``quantity`` along the eps sequence and extrapolate to eps = 0.

    The drift compares the full extrapolant with the one obtained from the
    finest points only (one order lower).
    """
    eps_values = tuple(float(e) for e in eps_values)
    vals = tuple(float(quantity(e)) for e in eps_values)
    full = richardson_in_eps(eps_values, vals)
    sub = richardson_in_eps(eps_values, vals, order=len(vals) - 2)
    return RegularizationReport(eps_values, vals, full, sub)
