# The dephasing kernel B^2(t), two ways.
#
# b_squared integrates the bath weight with log-spaced Gauss-Legendre panels;
# b_squared_discrete_converged sums over explicit bath modes instead.

import math

import numpy as np

from jcqdecoherence import ScenarioConfig, Temperature, b_squared, b_squared_discrete_converged

cfg = ScenarioConfig()
ohmic = cfg.ohmic_model()
flicker = cfg.oneoverf_model(1e-7)

print("    t     tau/ps   B2 ohmic(30 mK)  B2 1/f        mode-sum 1/f   small-angle 1/f")
for t in (0.001, 0.005, 0.01, 0.02, 0.05):
    b_ohm = b_squared(ohmic, Temperature(0.03), t)
    b_f = b_squared(flicker, Temperature(0.03), t)
    modes, n = b_squared_discrete_converged(flicker, Temperature(0.03), t)
    closed = 2 * flicker.kappa_ueV2 * flicker.alpha_f * t**2 * flicker.band.log_ratio
    print(f"{t:7.3f} {t * 658.2119569:8.2f}   {b_ohm:.6e}   {b_f:.6e}  {modes:.6e}  {closed:.6e}")

# Temperature drops out of the 1/f kernel entirely, while the Ohmic kernel
# grows with T.
for T_K in (0.03, 0.15, 0.1875):
    T = Temperature(T_K)
    print(f"T = {T_K:6.4f} K: ohmic {b_squared(ohmic, T, 0.02):.4e}, 1/f {b_squared(flicker, T, 0.02):.10e}")
