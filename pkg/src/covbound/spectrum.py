"""Mass-squared and total-energy assembly for the relative-motion levels."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.special import binom

from .errors import DivergenceWarning, DomainError, ImaginaryMass
from .kinematics import TwoBodyMasses
from .radial import Coulomb, Oscillator, RadialGrid, coulomb_K, oscillator_K, solve_radial_numeric
from .units import ATOMIC, EV, POSITRONIUM_HYPERFINE_EV, UnitSystem, masses_in_units


def mass_squared(K_a: float, K: float, M: float) -> float:
    """s_a = 2 M (K_a - K)."""
    return 2.0 * M * (K_a - K)


def ionization_K(M: float, c: float) -> float:
    """Conventional K = -M c^2 / 2 placing the continuum threshold at s = M^2 c^2."""
    return -M * c * c / 2.0


def total_energy(K_a: float, M: float, c: float = 1.0) -> float:
    """E_a = c sqrt(M^2 c^2 + 2 M K_a)."""
    radicand = M * M * c * c + 2.0 * M * K_a
    if radicand < 0:
        raise ImaginaryMass(f"M^2 c^2 + 2 M K_a = {radicand:.6g} < 0")
    return c * math.sqrt(radicand)


def energy_expansion(K_a: float, M: float, order: int, c: float = 1.0) -> list[float]:
    """Binomial-series terms of total_energy in powers of K_a / M c^2.

    Term j is M c^2 binom(1/2, j) (2 K_a / M c^2)^j, so the list starts
    [M c^2, K_a, -K_a^2 / 2 M c^2, ...].
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    rest = M * c * c
    x = 2.0 * K_a / rest
    if abs(x) >= 1:
        warnings.warn(f"|2 K_a / M c^2| = {abs(x):.3g} >= 1: series diverges", DivergenceWarning, stacklevel=2)
    return [rest * float(binom(0.5, j)) * x**j for j in range(order + 1)]


def relativistic_correction_ratio(Z: int, m: float, M: float, n_a: int, ell: int, alpha: float) -> float:
    """(Z^2 alpha^2 / 4) (m / M) / N^2, the size of the K_a^2 term relative to |K_a|."""
    N = n_a + ell + 1
    return Z**2 * alpha**2 / 4.0 * (m / M) / N**2


@dataclass(frozen=True)
class SpectralLine:
    n_a: int
    ell: int
    K_a: float
    s_a: float
    E_a: float
    E_series: tuple[float, ...]
    correction_ratio: float
    correction: float

    @property
    def N(self) -> int:
        return self.n_a + self.ell + 1

    def as_record(self) -> dict:
        return {
            "N": self.N,
            "n_a": self.n_a,
            "ell": self.ell,
            "K_a": self.K_a,
            "s_a": self.s_a,
            "E_a": self.E_a,
            "correction": self.correction,
            "correction_ratio": self.correction_ratio,
        }


def spectral_line(K_a: float, n_a: int, ell: int, masses: TwoBodyMasses, units: UnitSystem,
                  K: float | None = None, order: int = 2, Z: int | None = None) -> SpectralLine:
    """Assemble observables for one level.

    ``correction`` is the first relativistic term -K_a^2 / 2 M c^2.  The
    ratio uses the closed Coulomb form when ``Z`` is given and |correction/K_a|
    otherwise.
    """
    M, m, c = masses.M, masses.m, units.c
    K = ionization_K(M, c) if K is None else K
    s = mass_squared(K_a, K, M)
    E = total_energy(K_a, M, c) if K == ionization_K(M, c) else c * math.sqrt(s) if s >= 0 else math.nan
    series = tuple(energy_expansion(K_a, M, max(order, 2), c))
    corr = series[2]
    if Z is not None:
        ratio = relativistic_correction_ratio(Z, m, M, n_a, ell, units.alpha)
    else:
        ratio = abs(corr / K_a) if K_a else 0.0
    return SpectralLine(n_a, ell, float(K_a), float(s), float(E), series, float(ratio), float(corr))


def levels(N_max: int, ell_max: int | None = None):
    """(n_a, ell) pairs with N = n_a + ell + 1 <= N_max, ordered by N then ell."""
    ell_max = N_max - 1 if ell_max is None else ell_max
    return [(N - 1 - ell, ell) for N in range(1, N_max + 1) for ell in range(min(N - 1, ell_max) + 1)]


def spectrum_table(potential, N_max: int, masses: TwoBodyMasses, units: UnitSystem = ATOMIC,
                   ell_max: int | None = None, numeric: bool = False, grid: RadialGrid | None = None,
                   K: float | None = None) -> list[SpectralLine]:
    """Spectral lines for every level up to ``N_max``; analytic or numeric K_a."""
    pairs = levels(N_max, ell_max)
    m = masses.m
    K_values: dict[tuple[int, int], float] = {}
    if numeric:
        for ell in sorted({p[1] for p in pairs}):
            count = max(n for n, l in pairs if l == ell) + 1
            for sol in solve_radial_numeric(potential, ell, count, grid, m=m, units=units):
                K_values[(sol.n_a, ell)] = sol.K_a
    for n_a, ell in pairs:
        if (n_a, ell) in K_values:
            continue
        if isinstance(potential, Coulomb):
            K_values[(n_a, ell)] = coulomb_K(n_a, ell, potential.Z, m, units)
        elif isinstance(potential, Oscillator):
            K_values[(n_a, ell)] = oscillator_K(n_a, ell, potential.omega, units)
        else:
            raise DomainError("tabulated potentials need numeric=True")
    Z = potential.Z if isinstance(potential, Coulomb) else None
    return [spectral_line(K_values[p], p[0], p[1], masses, units, K=K, Z=Z) for p in pairs]


@dataclass(frozen=True)
class PositroniumReport:
    line: SpectralLine
    binding: float
    delta: float
    hyperfine: float

    @property
    def hyperfine_fraction(self) -> float:
        return self.delta / self.hyperfine


def positronium_report(hyperfine: float = POSITRONIUM_HYPERFINE_EV) -> PositroniumReport:
    """Ground-state positronium in eV with its lowest relativistic correction."""
    masses = TwoBodyMasses(*masses_in_units(1.0, 1.0, EV))
    K_a = coulomb_K(0, 0, 1, masses.m, EV)
    line = spectral_line(K_a, 0, 0, masses, EV, Z=1)
    return PositroniumReport(line, line.K_a, abs(line.correction), hyperfine)
