import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jcqdecoherence.spectra import (
    Band,
    CompositeNoise,
    OhmicNoise,
    OneOverFNoise,
    Temperature,
    coth_thermal,
    power_spectrum_S,
    spectral_density_J,
    weight,
    weight_ohmic,
    weight_oneoverf,
)
from jcqdecoherence.units import freq_to_energy

KAPPA = 6.40e6
T30 = Temperature(0.03)
OHMIC_BAND = Band.from_hz(1e9, 50e9)
F_BAND = Band.from_hz(1e3, 1e9)
E_CUT = freq_to_energy(50e9)


def composite(eta=1e-6, alpha=1e-7):
    return CompositeNoise((OhmicNoise(eta, E_CUT, OHMIC_BAND), OneOverFNoise(KAPPA, alpha, F_BAND)))


def test_band_validation():
    with pytest.raises(ValueError):
        Band(2.0, 1.0)
    with pytest.raises(ValueError):
        Band(0.0, 1.0)
    assert F_BAND.log_ratio == pytest.approx(math.log(1e6))


def test_temperature():
    assert T30.thermal_energy == pytest.approx(2.585, rel=1e-3)
    with pytest.raises(ValueError):
        Temperature(0.0)


def test_weight_ohmic_examples():
    assert weight_ohmic(3.0, 0.0, 10.0) == 0.0
    assert weight_ohmic(10.0, 1.0, 10.0) == pytest.approx(10.0 / math.e)
    assert weight_ohmic(4.1357, 1e-6, 206.78) == pytest.approx(4.1357e-6 * math.exp(-4.1357 / 206.78), rel=1e-14)
    assert weight_ohmic(4.1357, 1e-6, 206.78) == pytest.approx(4.053e-6, rel=1e-3)
    assert weight_ohmic(10.0, 1.0, 10.0, cutoff_sign=1) == pytest.approx(10.0 * math.e)
    with pytest.raises(ValueError):
        weight_ohmic(0.0, 1.0, 1.0)


def test_weight_oneoverf_examples():
    assert weight_oneoverf(1.0, KAPPA, 0.0, T30) == 0.0
    E = 100 * 2 * T30.thermal_energy
    assert weight_oneoverf(E, KAPPA, 1e-7, T30) == pytest.approx(KAPPA * 1e-7 / E, rel=1e-6)
    small = weight_oneoverf(freq_to_energy(1e3), KAPPA, 1e-7, T30)
    assert small == pytest.approx(KAPPA * 1e-7 / (2 * T30.thermal_energy), rel=1e-12)
    assert small == pytest.approx(0.1238, rel=1e-3)
    with pytest.raises(ValueError):
        weight_oneoverf(-1.0, KAPPA, 1e-7, T30)


def test_oneoverf_series_branch_is_continuous():
    two_kt = 2 * T30.thermal_energy
    below = weight_oneoverf(two_kt * 0.999e-6, KAPPA, 1e-7, T30)
    above = weight_oneoverf(two_kt * 1.001e-6, KAPPA, 1e-7, T30)
    assert below == pytest.approx(above, rel=1e-12)
    assert coth_thermal(two_kt * 1e-3, T30) == pytest.approx(1 / math.tanh(1e-3), rel=1e-14)


def test_composite_dispatch():
    model = composite()
    E = 1.0  # inside the 1/f band only
    assert weight(model, E, T30) == weight_oneoverf(E, KAPPA, 1e-7, T30)
    E = 100.0  # inside the Ohmic band only
    assert weight(model, E, T30) == weight_ohmic(E, 1e-6, E_CUT)
    assert np.all(weight(composite(0.0, 0.0), np.geomspace(1e-9, 200, 50), T30) == 0.0)


def test_composite_overlap_sum():
    ohm = OhmicNoise(1e-6, E_CUT, Band(1.0, 10.0))
    f = OneOverFNoise(KAPPA, 1e-7, Band(0.5, 5.0))
    E = 3.0
    expected = weight_ohmic(E, 1e-6, E_CUT) + weight_oneoverf(E, KAPPA, 1e-7, T30)
    assert weight(CompositeNoise((ohm, f)), E, T30) == expected


def test_composite_members_limited():
    ohm = OhmicNoise(1e-6, E_CUT, OHMIC_BAND)
    with pytest.raises(ValueError):
        CompositeNoise((ohm, ohm))
    with pytest.raises(TypeError):
        CompositeNoise((ohm, "noise"))


def test_spectral_density_ratio():
    model = composite()
    E = np.geomspace(1e-8, 200, 40)
    W = weight(model, E, T30)
    J = spectral_density_J(model, E, T30)
    np.testing.assert_allclose(J, 0.5 * math.pi * W, rtol=1e-15)
    ohm = OhmicNoise(1e-6, E_CUT, Band(1.0, 20.0))
    assert spectral_density_J(ohm, 10.0, T30) == pytest.approx(0.5 * math.pi * weight_ohmic(10.0, 1e-6, E_CUT))


def test_power_spectrum_oneoverf_flat():
    f = OneOverFNoise(KAPPA, 1e-7, F_BAND)
    E = np.geomspace(F_BAND.E_lo, F_BAND.E_hi, 200)
    SE = power_spectrum_S(f, E, T30) * E
    np.testing.assert_allclose(SE, 0.5 * math.pi * KAPPA * 1e-7, rtol=1e-12)


def test_power_spectrum_ohmic():
    ohm = OhmicNoise(1e-6, E_CUT, Band(0.1, 100.0))
    E = 2 * T30.thermal_energy
    assert power_spectrum_S(ohm, E, T30) == pytest.approx(spectral_density_J(ohm, E, T30) / math.tanh(1.0), rel=1e-14)
    hot = Temperature(1000.0)
    E = 1.0
    ratio = power_spectrum_S(ohm, E, hot) / spectral_density_J(ohm, E, hot)
    assert ratio == pytest.approx(2 * hot.thermal_energy / E, rel=1e-6)


@given(st.floats(1e-8, 1e3), st.floats(0.01, 1.0), st.floats(0.0, 1e-3), st.floats(0.0, 1e-5))
def test_weight_nonnegative(E, T_K, alpha, eta):
    model = CompositeNoise(
        (OhmicNoise(eta, E_CUT, Band(1e-9, 1e4)), OneOverFNoise(KAPPA, alpha, Band(1e-9, 1e4)))
    )
    assert weight(model, E, Temperature(T_K)) >= 0.0


@given(st.floats(1e-8, 200.0), st.floats(0.1, 100.0))
def test_weight_linear_in_coupling(E, c):
    ohm = OhmicNoise(1e-6, E_CUT, Band(1e-9, 1e3))
    f = OneOverFNoise(KAPPA, 1e-7, Band(1e-9, 1e3))
    assert weight(ohm.scaled(c), E, T30) == pytest.approx(c * weight(ohm, E, T30), rel=1e-14)
    assert weight(f.scaled(c), E, T30) == pytest.approx(c * weight(f, E, T30), rel=1e-14)


@given(st.floats(1e-9, 1e3))
def test_oneoverf_temperature_cancellation(E):
    cold, warm = Temperature(0.03), Temperature(0.3)
    a = weight_oneoverf(E, KAPPA, 1e-7, cold) * coth_thermal(E, cold)
    b = weight_oneoverf(E, KAPPA, 1e-7, warm) * coth_thermal(E, warm)
    assert abs(a - b) <= 1e-12 * abs(a)
