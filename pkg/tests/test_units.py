import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jcqdecoherence import units
from jcqdecoherence.units import (
    CircuitParams,
    EnergyScales,
    charging_energy,
    critical_current,
    eta_from_circuit,
    freq_to_energy,
    josephson_energy,
    kappa_from_charging,
    t_to_tau_ps,
    tau_ps_to_t,
)

# e^2 / 2(C_g + C_J) for 1e-18 F and 1e-16 F, computed with scipy.constants
CHARGING_ENERGY_REF = 793.1567495049503


def test_constants_against_scipy():
    sc = pytest.importorskip("scipy.constants")
    assert units.HBAR_UEV_S == pytest.approx(sc.hbar / sc.e * 1e6, rel=1e-12)
    assert units.H_UEV_S == pytest.approx(sc.h / sc.e * 1e6, rel=1e-12)
    assert units.KB_UEV_PER_K == pytest.approx(sc.k / sc.e * 1e6, rel=1e-12)


def test_resistance_quantum():
    assert abs(units.R_Q_OHM - 6453.2) < 0.1


def test_constants_immutable():
    with pytest.raises(Exception):
        units.CONSTANTS.h_ueV_s = 1.0


def test_charging_energy():
    assert charging_energy(1e-18, 1e-16) == pytest.approx(CHARGING_ENERGY_REF, rel=1e-12)
    assert charging_energy(1e-18, 1e-16) == pytest.approx(792.4, rel=2e-3)
    C = 3e-16
    assert charging_energy(C, C) == pytest.approx(units.E_CHARGE / (4 * C) * 1e6, rel=1e-14)
    with pytest.raises(ValueError):
        charging_energy(1e-18, 0)


def test_josephson_energy():
    assert josephson_energy(2.52e-8) == pytest.approx(51.8, rel=2e-3)
    Ic = critical_current(51.8)
    assert josephson_energy(Ic) == pytest.approx(51.8, rel=1e-14)
    assert josephson_energy(2 * Ic) == pytest.approx(2 * 51.8, rel=1e-14)
    with pytest.raises(ValueError):
        josephson_energy(0.0)


def test_eta():
    assert eta_from_circuit(units.R_Q_OHM, 1.0) == pytest.approx(4.0)
    assert eta_from_circuit(50.0, 0.01) == pytest.approx(3.10e-6, rel=2e-3)
    base = eta_from_circuit(50.0, 0.01)
    for c in (2.0, 3.0, 10.0):
        assert eta_from_circuit(c * 50.0, 0.01) == pytest.approx(c * base, rel=1e-14)
        assert eta_from_circuit(50.0, c * 0.01) == pytest.approx(c**2 * base, rel=1e-14)
    with pytest.raises(ValueError):
        eta_from_circuit(-1.0, 0.01)


def test_kappa():
    k_int, k_si = kappa_from_charging(CHARGING_ENERGY_REF)
    assert 1.4e25 <= k_si <= 1.6e25
    assert k_int == pytest.approx(32 * CHARGING_ENERGY_REF**2 / math.pi, rel=1e-15)
    k792, k792_si = kappa_from_charging(792.4)
    assert k792 == pytest.approx(6.40e6, rel=2e-3)
    assert k792_si == pytest.approx(1.48e25, rel=3e-3)
    k2, k2_si = kappa_from_charging(2 * 792.4)
    assert k2 == pytest.approx(4 * k792, rel=1e-14)
    assert k2_si == pytest.approx(4 * k792_si, rel=1e-14)


def test_kappa_matches_sixty_four_ec_squared_over_h_hbar():
    E_c = CHARGING_ENERGY_REF
    _, k_si = kappa_from_charging(E_c)
    assert k_si == pytest.approx(64 * E_c**2 / (units.H_UEV_S * units.HBAR_UEV_S), rel=1e-13)


def test_energy_scales_from_circuit():
    scales = EnergyScales.from_circuit(CircuitParams(), E_J_ueV=51.8, eta=1e-6)
    assert scales.eta == 1e-6
    assert scales.E_c_ueV == pytest.approx(CHARGING_ENERGY_REF)
    assert scales.kappa_ueV2 == pytest.approx(32 * scales.E_c_ueV**2 / math.pi)
    derived = EnergyScales.from_circuit(CircuitParams(I_c_A=critical_current(51.8)))
    assert derived.E_J_ueV == pytest.approx(51.8)
    assert derived.eta == pytest.approx(eta_from_circuit(50.0, 0.01))
    with pytest.raises(ValueError):
        EnergyScales.from_circuit(CircuitParams())
    with pytest.raises(ValueError):
        CircuitParams(C_J_F=0.0)


@pytest.mark.parametrize(
    "nu, expected",
    [(1e9, 4.1357), (50e9, 206.78), (1e3, 4.1357e-6)],
)
def test_freq_to_energy(nu, expected):
    assert freq_to_energy(nu) == pytest.approx(expected, rel=1e-4)


def test_freq_to_energy_angular_and_errors():
    assert freq_to_energy(2 * math.pi * 1e9, angular=True) == pytest.approx(freq_to_energy(1e9), rel=1e-14)
    with pytest.raises(ValueError):
        freq_to_energy(0.0)


@given(st.floats(1e-3, 1e12), st.floats(1e-3, 1e3))
def test_freq_to_energy_linear(nu, a):
    assert freq_to_energy(a * nu) == pytest.approx(a * freq_to_energy(nu), rel=1e-14)


def test_time_conversion():
    assert t_to_tau_ps(0.1) == pytest.approx(65.82, abs=0.01)
    assert t_to_tau_ps(1 / 51.8) == pytest.approx(12.7, abs=0.1)
    assert t_to_tau_ps(0.0) == 0.0


@given(st.floats(1e-6, 1e3))
def test_time_round_trip(t):
    back = float(tau_ps_to_t(t_to_tau_ps(t)))
    assert abs(back - t) <= np.spacing(t)
