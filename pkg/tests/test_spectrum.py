import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from covbound.errors import ConfigError, DivergenceWarning, DomainError, ImaginaryMass
from covbound.kinematics import TwoBodyMasses
from covbound.radial import Coulomb, Oscillator, Tabulated, coulomb_K
from covbound.spectrum import (
    energy_expansion, ionization_K, levels, mass_squared, positronium_report, relativistic_correction_ratio,
    spectral_line, spectrum_table, total_energy,
)
from covbound.units import ALPHA, ATOMIC, ELECTRON_MASS_EV, EV, HARTREE_EV, UnitSystem, get_units, masses_in_units


def test_unit_systems_consistent():
    for u in (ATOMIC, EV):
        assert u.e2 / (u.hbar * u.c) == pytest.approx(ALPHA, rel=1e-12)
    assert ATOMIC.c == pytest.approx(137.035999, rel=1e-8)
    assert get_units("ev") is EV
    with pytest.raises(ConfigError):
        get_units("si")
    with pytest.raises(ConfigError):
        UnitSystem("bad", 1.0, 1.0, 1.0, 0.5, "", "", "")


def test_hartree_in_ev():
    m = ELECTRON_MASS_EV
    assert -2 * coulomb_K(0, 0, 1, m, EV) == pytest.approx(HARTREE_EV, rel=1e-8)


def test_mass_conversion():
    assert masses_in_units(1.0, 1.0, ATOMIC) == (2.0, 2.0)
    assert masses_in_units(1.0, 1.0, EV) == (ELECTRON_MASS_EV, ELECTRON_MASS_EV)
    with pytest.raises(ConfigError):
        masses_in_units(0.0, 1.0, EV)


def test_mass_squared_and_energy():
    M = 2.0
    assert mass_squared(-0.1, ionization_K(M, 1.0), M) == pytest.approx(M * M - 0.4)
    assert total_energy(-0.1, M, 1.0) == pytest.approx(math.sqrt(4 - 0.4))
    with pytest.raises(ImaginaryMass):
        total_energy(-2.0, 1.0, 1.0)


@given(st.floats(-0.4, 0.4), st.floats(0.5, 10.0))
@settings(max_examples=50)
def test_energy_series_converges(x, M):
    K_a = x * M / 2
    terms = energy_expansion(K_a, M, 40)
    assert sum(terms) == pytest.approx(total_energy(K_a, M), rel=1e-9)
    assert terms[1] == pytest.approx(K_a)
    assert terms[2] == pytest.approx(-K_a**2 / (2 * M))


def test_energy_series_divergence_warning():
    with pytest.warns(DivergenceWarning):
        energy_expansion(-0.6, 1.0, 3)
    with pytest.raises(DomainError):
        energy_expansion(0.1, 1.0, -1)


def test_correction_ratio_matches_series():
    masses = TwoBodyMasses(*masses_in_units(1.0, 1836.15267343, ATOMIC))
    for n_a, ell in [(0, 0), (1, 0), (0, 2)]:
        K_a = coulomb_K(n_a, ell, 1, masses.m, ATOMIC)
        line = spectral_line(K_a, n_a, ell, masses, ATOMIC, Z=1)
        ratio = relativistic_correction_ratio(1, masses.m, masses.M, n_a, ell, ALPHA)
        assert abs(line.correction / line.K_a) == pytest.approx(ratio, rel=1e-10)


def test_levels_ordering():
    assert levels(3) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert levels(3, ell_max=0) == [(0, 0), (1, 0), (2, 0)]


def test_spectrum_table_coulomb():
    masses = TwoBodyMasses(*masses_in_units(1.0, 1.0, ATOMIC))
    rows = spectrum_table(Coulomb(1), 3, masses)
    assert [r.K_a for r in rows][:2] == [-0.5, -0.125]
    assert rows[-1].K_a == pytest.approx(-1 / 18)
    assert [r.N for r in rows] == sorted(r.N for r in rows)


def test_spectrum_table_numeric_matches_analytic():
    masses = TwoBodyMasses(*masses_in_units(1.0, 1.0, ATOMIC))
    a = spectrum_table(Oscillator(1.0), 3, masses)
    b = spectrum_table(Oscillator(1.0), 3, masses, numeric=True)
    np.testing.assert_allclose([x.K_a for x in a], [x.K_a for x in b], rtol=1e-6)
    assert [x.K_a for x in a][:3] == [1.5, 3.5, 2.5]


def test_tabulated_requires_numeric():
    rho = np.linspace(0, 10, 50)
    with pytest.raises(DomainError):
        spectrum_table(Tabulated(rho, rho**2), 1, TwoBodyMasses(1.0, 1.0))


def test_explicit_K_changes_mass_squared():
    masses = TwoBodyMasses(2.0, 2.0)
    line = spectral_line(-0.5, 0, 0, masses, ATOMIC, K=-1.0)
    assert line.s_a == pytest.approx(2 * 4.0 * 0.5)


def test_positronium_numbers():
    rep = positronium_report()
    # frozen from the closed form: Rydberg / 2 and K^2 / (2 M c^2)
    assert rep.binding == pytest.approx(-6.802846561534943, rel=1e-12)
    assert rep.delta == pytest.approx(rep.binding**2 / (2 * 2 * ELECTRON_MASS_EV), rel=1e-12)
    assert rep.delta == pytest.approx(2.2641299624875836e-05, rel=1e-10)
    assert 0.02 <= rep.hyperfine_fraction <= 0.035
    assert rep.line.as_record()["N"] == 1


def test_positronium_in_natural_units():
    """M = 2, m = 1/2, c = 1, K = -M/2: ground K_a = -1/4 gives s = 3."""
    K_a = coulomb_K(0, 0, 1, 0.5)
    assert K_a == -0.25
    assert mass_squared(K_a, -1.0, 2.0) == 3.0
    assert mass_squared(-0.3, -0.3, 2.0) == 0.0


@given(st.floats(-0.4, 5.0), st.floats(1.0, 10.0), st.floats(0.5, 200.0))
@settings(max_examples=50)
def test_energy_squared_is_c2_s(K_a, M, c):
    s = mass_squared(K_a, ionization_K(M, c), M)
    assert total_energy(K_a, M, c) ** 2 == pytest.approx(c * c * s, rel=1e-12)


def test_correction_ratio_limits():
    assert relativistic_correction_ratio(1, 0.5, 2.0, 0, 0, ALPHA) == pytest.approx(ALPHA**2 / 16)
    ratios = [relativistic_correction_ratio(1, 0.5, 2.0, n, 0, ALPHA) for n in range(50)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(ratios[0] / 2500)
