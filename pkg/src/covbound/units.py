"""Unit systems.

``atomic`` scales hbar = e^2 = 1 and takes the reduced mass of the pair as the
mass unit, so Coulomb levels read -Z^2 / 2N^2 and lengths are reduced Bohr
radii.  The speed of light is then 1/alpha.  ``ev`` measures masses as rest
energies in eV with c = 1, lengths in nm and hbar through hbar*c.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ConfigError

ALPHA = 7.2973525693e-3
HBAR_C_EV_NM = 197.3269804
ELECTRON_MASS_EV = 510998.95
HARTREE_EV = 27.211386245988
POSITRONIUM_HYPERFINE_EV = 8.4e-4


@dataclass(frozen=True)
class UnitSystem:
    name: str
    hbar: float
    c: float
    e2: float
    alpha: float
    length_unit: str
    energy_unit: str
    mass_unit: str

    def __post_init__(self):
        for key in ("hbar", "c", "e2", "alpha"):
            if not getattr(self, key) > 0:
                raise ConfigError(f"unit constant {key} must be positive")
        coupling = self.e2 / (self.hbar * self.c)
        if abs(coupling / self.alpha - 1) > 1e-9:
            raise ConfigError(f"e^2/(hbar c) = {coupling} inconsistent with alpha = {self.alpha}")

    def bohr_radius(self, m: float) -> float:
        return self.hbar**2 / (m * self.e2)

    def record(self) -> dict:
        return asdict(self)


ATOMIC = UnitSystem(
    name="atomic",
    hbar=1.0,
    c=1.0 / ALPHA,
    e2=1.0,
    alpha=ALPHA,
    length_unit="a0 (reduced-mass Bohr radius)",
    energy_unit="m e^4/hbar^2 (reduced-mass hartree)",
    mass_unit="reduced mass m",
)

EV = UnitSystem(
    name="ev",
    hbar=HBAR_C_EV_NM,
    c=1.0,
    e2=ALPHA * HBAR_C_EV_NM,
    alpha=ALPHA,
    length_unit="nm",
    energy_unit="eV",
    mass_unit="eV/c^2",
)

UNIT_SYSTEMS = {"atomic": ATOMIC, "ev": EV}


def get_units(name: str) -> UnitSystem:
    try:
        return UNIT_SYSTEMS[name]
    except KeyError:
        raise ConfigError(f"unknown unit system {name!r}; choose from {sorted(UNIT_SYSTEMS)}") from None


def masses_in_units(m1_electron: float, m2_electron: float, units: UnitSystem) -> tuple[float, float]:
    """Convert particle masses given in electron masses to the active system."""
    if not (m1_electron > 0 and m2_electron > 0):
        raise ConfigError("particle masses must be positive")
    if units.name == "atomic":
        reduced = m1_electron * m2_electron / (m1_electron + m2_electron)
        return m1_electron / reduced, m2_electron / reduced
    if units.name == "ev":
        return m1_electron * ELECTRON_MASS_EV, m2_electron * ELECTRON_MASS_EV
    raise ConfigError(f"no mass conversion for unit system {units.name!r}")
