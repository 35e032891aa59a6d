# Bath weights for the two noise sources seen by a charge qubit.
#
# Energies are in micro-eV; a bath mode at frequency nu has E = h nu.

import numpy as np

from jcqdecoherence import Band, OhmicNoise, OneOverFNoise, Temperature, power_spectrum_S, weight
from jcqdecoherence.units import charging_energy, freq_to_energy, kappa_from_charging

# Charging energy and 1/f prefactor of a box with C_g = 1 aF, C_J = 100 aF.
E_c = charging_energy(1e-18, 1e-16)
kappa, kappa_si = kappa_from_charging(E_c)
print(f"E_c = {E_c:.1f} ueV, kappa = {kappa:.3e} ueV^2 ({kappa_si:.2e} s^-2)")

ohmic = OhmicNoise(eta=1e-6, E_cut=freq_to_energy(50e9), band=Band.from_hz(1e9, 50e9))
flicker = OneOverFNoise(kappa, alpha_f=1e-7, band=Band.from_hz(1e3, 1e9))
T = Temperature(0.03)

# The Ohmic weight grows linearly until the cutoff; the 1/f weight saturates
# below k_B T because the thermal factor cancels one power of E.
for E in np.geomspace(1e-5, 200, 8):
    model = ohmic if E >= ohmic.band.E_lo else flicker
    print(f"E = {E:10.3e} ueV  W = {weight(model, E, T):10.3e}")

# The symmetrized 1/f power spectrum is exactly proportional to 1/E.
E = np.geomspace(flicker.band.E_lo, flicker.band.E_hi, 5)
print("S(E) * E for 1/f noise:", power_spectrum_S(flicker, E, T) * E)
