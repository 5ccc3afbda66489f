"""Gamma, Legendre and Laguerre functions used by the eigenfunction families.

Everything here is implemented from recurrences so the module has no hidden
dependence on a particular special-function library; scipy is used only in the
tests as an oracle.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, LegendreIndexError, PoleError

# Lanczos coefficients for g = 7, n = 9 (about 15 significant digits).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function via the Lanczos approximation and reflection."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    if x == math.floor(x) and x < 30:
        return float(math.prod(range(1, int(x))))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    # split the power to avoid overflow for large arguments
    half = t ** ((z + 0.5) / 2)
    return math.sqrt(2 * math.pi) * half * half * math.exp(-t) * acc


def _check_closed_interval(zeta):
    zeta = np.asarray(zeta, dtype=float)
    if np.any(np.abs(zeta) > 1.0) or np.any(~np.isfinite(zeta)):
        raise DomainError("argument must lie in [-1, 1]")
    return zeta


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


def legendre_p(m: int, zeta):
    """Legendre polynomial P_m by the Bonnet recurrence."""
    if m < 0:
        raise DomainError(f"degree must be nonnegative, got {m}")
    x = _check_closed_interval(zeta)
    p_prev, p = np.ones_like(x), x.copy()
    if m == 0:
        return _scalar_or_array(p_prev)
    for k in range(1, m):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return _scalar_or_array(p)


def assoc_legendre_p(m: int, n: int, zeta):
    """Associated Legendre function of the first kind P_m^{-n}, 0 <= n <= m.

    Negative order is fixed by the reflection identity, so
    ``P_m^{-n} = (m-n)!/(m+n)! (1-z^2)^{n/2} d^n P_m/dz^n`` and the result does
    not depend on the Condon-Shortley phase.  Computed by the upward recurrence
    in degree starting from ``P_n^{-n} = (1-z^2)^{n/2} / (2^n n!)``.
    """
    if n < 0 or m < 0:
        raise DomainError("degree and order index must be nonnegative")
    if n > m:
        raise LegendreIndexError(f"order {n} exceeds degree {m}")
    x = _check_closed_interval(zeta)
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    p_prev = s**n / (2.0**n * math.factorial(n))
    if m == n:
        return _scalar_or_array(p_prev)
    p = x * p_prev
    for deg in range(n + 2, m + 1):
        p_prev, p = p, (x * (2 * deg - 1) * p - (deg - n - 1) * p_prev) / (deg + n)
    return _scalar_or_array(p)


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by three-term recurrence."""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if alpha <= -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("laguerre argument must be nonnegative")
    l_prev, l = np.ones_like(x), 1.0 + alpha - x
    if n == 0:
        return _scalar_or_array(l_prev)
    for k in range(1, n):
        l_prev, l = l, ((2 * k + 1 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1)
    return _scalar_or_array(l)


def b_norm_constant(m: int, n: int) -> float:
    """sqrt(n) * sqrt(Gamma(1+m+n) / Gamma(1+m-n)) normalising P_m^{-n}."""
    if n < 1 or n > m:
        raise LegendreIndexError(f"need 1 <= n <= m, got m={m}, n={n}")
    return math.sqrt(n) * math.sqrt(gamma_fn(1 + m + n) / gamma_fn(1 + m - n))


def legendre_weighted_norm(m: int, n: int, beta_max: float = 20.0, step: float = 0.02) -> float:
    """Integral of |P_m^{-n}(z)|^2 / (1 - z^2) over (-1, 1).

    With z = tanh(beta) the weight becomes d(beta) and the integrand decays
    like sech^(2n), so a uniform trapezoid rule on [-beta_max, beta_max]
    converges geometrically.
    """
    if n < 1:
        raise LegendreIndexError("the weighted integral diverges for n = 0")
    npts = int(round(2 * beta_max / step)) + 1
    beta = np.linspace(-beta_max, beta_max, npts)
    f = assoc_legendre_p(m, n, np.tanh(beta)) ** 2
    return float(np.trapezoid(f, beta))


def legendre_weighted_norm_exact(m: int, n: int) -> float:
    """Closed form (1/n) Gamma(1+m-n) / Gamma(1+m+n)."""
    return gamma_fn(1 + m - n) / (n * gamma_fn(1 + m + n))
