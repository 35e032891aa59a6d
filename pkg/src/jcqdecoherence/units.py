"""Physical constants and unit conversions.

Internal conventions used throughout the package:

* energies (including bath-mode energies ``E = h nu``) are in micro-eV,
* time is the dimensionless ``t = tau / hbar`` with ``hbar`` in ueV*s, so a
  phase is simply ``E * t``,
* physical time is recovered as ``tau = t * hbar``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

# Exact SI values (2019 redefinition, identical in CODATA 2018).
_H_SI = 6.62607015e-34  # J s
_E_SI = 1.602176634e-19  # C
_KB_SI = 1.380649e-23  # J / K
_J_TO_UEV = 1e6 / _E_SI


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_ueV_s: float = _H_SI / (2.0 * math.pi) * _J_TO_UEV
    h_ueV_s: float = _H_SI * _J_TO_UEV
    k_B_ueV_per_K: float = _KB_SI * _J_TO_UEV
    e_C: float = _E_SI

    @property
    def R_Q_ohm(self) -> float:
        """Resistance quantum h / (2e)^2 for Cooper pairs."""
        return (self.h_ueV_s / _J_TO_UEV) / (2.0 * self.e_C) ** 2

    @property
    def hbar_J_s(self) -> float:
        return self.hbar_ueV_s / _J_TO_UEV


CONSTANTS = PhysicalConstants()

HBAR_UEV_S = CONSTANTS.hbar_ueV_s
H_UEV_S = CONSTANTS.h_ueV_s
KB_UEV_PER_K = CONSTANTS.k_B_ueV_per_K
E_CHARGE = CONSTANTS.e_C
R_Q_OHM = CONSTANTS.R_Q_ohm


@dataclass(frozen=True)
class CircuitParams:
    """Raw circuit quantities of the charge-qubit box."""

    R_ohm: float = 50.0
    C_g_F: float = 1e-18
    C_J_F: float = 1e-16
    ct_over_cj: float = 0.01
    I_c_A: Optional[float] = None

    def __post_init__(self):
        for name in ("R_ohm", "C_g_F", "C_J_F", "ct_over_cj"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive, got {getattr(self, name)!r}")
        if self.I_c_A is not None and not self.I_c_A > 0:
            raise ValueError(f"I_c_A must be strictly positive, got {self.I_c_A!r}")


@dataclass(frozen=True)
class EnergyScales:
    E_c_ueV: float
    E_J_ueV: float
    eta: float
    kappa_ueV2: float
    kappa_SI_per_s2: float

    @classmethod
    def from_circuit(
        cls,
        circuit: CircuitParams,
        E_J_ueV: Optional[float] = None,
        eta: Optional[float] = None,
        E_c_ueV: Optional[float] = None,
    ) -> "EnergyScales":
        """Derive all scales from ``circuit``; any explicit argument wins."""
        if E_c_ueV is None:
            E_c_ueV = charging_energy(circuit.C_g_F, circuit.C_J_F)
        if E_J_ueV is None:
            if circuit.I_c_A is None:
                raise ValueError("either E_J_ueV or circuit.I_c_A is required")
            E_J_ueV = josephson_energy(circuit.I_c_A)
        if eta is None:
            eta = eta_from_circuit(circuit.R_ohm, circuit.ct_over_cj)
        kappa_ueV2, kappa_SI = kappa_from_charging(E_c_ueV)
        return cls(E_c_ueV, E_J_ueV, eta, kappa_ueV2, kappa_SI)


def charging_energy(C_g_F: float, C_J_F: float) -> float:
    """Charging energy e^2 / 2(C_g + C_J) in ueV."""
    if not (C_g_F > 0 and C_J_F > 0):
        raise ValueError(f"capacitances must be positive, got C_g={C_g_F!r}, C_J={C_J_F!r}")
    # e^2/(2C) in J, divided by e -> eV; avoids one rounding step.
    return E_CHARGE / (2.0 * (C_g_F + C_J_F)) * 1e6


def josephson_energy(I_c_A: float) -> float:
    """Josephson coupling energy I_c hbar / 2e in ueV."""
    if not I_c_A > 0:
        raise ValueError(f"critical current must be positive, got {I_c_A!r}")
    return I_c_A * CONSTANTS.hbar_J_s / (2.0 * E_CHARGE) * _J_TO_UEV


def critical_current(E_J_ueV: float) -> float:
    """Inverse of :func:`josephson_energy`, in A."""
    if not E_J_ueV > 0:
        raise ValueError(f"E_J must be positive, got {E_J_ueV!r}")
    return E_J_ueV / _J_TO_UEV * 2.0 * E_CHARGE / CONSTANTS.hbar_J_s


def eta_from_circuit(R_ohm: float, ct_over_cj: float) -> float:
    """Dimensionless Ohmic coupling 4 (R / R_Q) (C_t / C_J)^2."""
    if not R_ohm > 0:
        raise ValueError(f"R must be positive, got {R_ohm!r}")
    if not ct_over_cj > 0:
        raise ValueError(f"C_t/C_J must be positive, got {ct_over_cj!r}")
    return 4.0 * (R_ohm / R_Q_OHM) * ct_over_cj**2


def kappa_from_charging(E_c_ueV: float) -> tuple[float, float]:
    """1/f prefactor from the charging energy.

    Returns
    -------
    kappa_ueV2 : float
        ``32 E_c^2 / pi`` in ueV^2, the form used by the noise weights.
    kappa_SI_per_s2 : float
        The same quantity divided by hbar^2, i.e. ``64 E_c^2 / (h hbar)``
        in s^-2.
    """
    if not E_c_ueV > 0:
        raise ValueError(f"E_c must be positive, got {E_c_ueV!r}")
    kappa_ueV2 = 32.0 * E_c_ueV**2 / math.pi
    return kappa_ueV2, kappa_ueV2 / HBAR_UEV_S**2


def freq_to_energy(nu_Hz, angular: bool = False):
    """Convert a frequency to an energy in ueV.

    By default ``nu_Hz`` is an ordinary frequency and ``E = h nu``. With
    ``angular=True`` the input is read as an angular frequency in rad/s and
    ``E = hbar omega``.
    """
    nu = np.asarray(nu_Hz, dtype=float)
    if np.any(nu <= 0):
        raise ValueError(f"frequency must be positive, got {nu_Hz!r}")
    out = nu * (HBAR_UEV_S if angular else H_UEV_S)
    return float(out) if out.ndim == 0 else out


def t_to_tau_ps(t):
    """Dimensionless time to picoseconds."""
    return np.multiply(t, HBAR_UEV_S * 1e12)


def tau_ps_to_t(tau_ps):
    """Picoseconds to dimensionless time."""
    return np.divide(tau_ps, HBAR_UEV_S * 1e12)


def thermal_energy(T_K: float) -> float:
    """k_B T in ueV."""
    return KB_UEV_PER_K * T_K
