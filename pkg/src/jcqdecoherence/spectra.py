"""Bath weight functions W(E) = D(omega) g(omega)^2 for Ohmic and 1/f noise.

All energies are in ueV. The weights are what the dephasing kernel
integrates; :func:`spectral_density_J` and :func:`power_spectrum_S` are
diagnostic views of the same quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .units import freq_to_energy, thermal_energy

# Below this value of x = E / 2k_BT the coth factor uses its series form.
_SMALL_X = 1e-6


@dataclass(frozen=True)
class Band:
    """Closed energy interval [E_lo, E_hi] of bath modes, in ueV."""

    E_lo: float
    E_hi: float

    def __post_init__(self):
        if not (0 < self.E_lo < self.E_hi):
            raise ValueError(f"band needs 0 < E_lo < E_hi, got ({self.E_lo!r}, {self.E_hi!r})")

    @classmethod
    def from_hz(cls, lo_Hz: float, hi_Hz: float, angular: bool = False) -> "Band":
        return cls(freq_to_energy(lo_Hz, angular), freq_to_energy(hi_Hz, angular))

    def contains(self, E):
        return (E >= self.E_lo) & (E <= self.E_hi)

    @property
    def log_ratio(self) -> float:
        return math.log(self.E_hi / self.E_lo)


@dataclass(frozen=True)
class Temperature:
    T_K: float

    def __post_init__(self):
        if not self.T_K > 0:
            raise ValueError(f"temperature must be positive, got {self.T_K!r}")

    @property
    def thermal_energy(self) -> float:
        """k_B T in ueV."""
        return thermal_energy(self.T_K)


@dataclass(frozen=True)
class OhmicNoise:
    """Ohmic bath, W(E) = eta E exp(-E / E_cut) inside ``band``.

    ``cutoff_sign=+1`` reproduces the literal growing exponential
    exp(+E / E_cut); it exists only for sensitivity studies.
    """

    eta: float
    E_cut: float
    band: Band
    cutoff_sign: int = -1

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta!r}")
        if not self.E_cut > 0:
            raise ValueError(f"E_cut must be positive, got {self.E_cut!r}")
        if self.cutoff_sign not in (-1, 1):
            raise ValueError(f"cutoff_sign must be -1 or +1, got {self.cutoff_sign!r}")

    def scaled(self, c: float) -> "OhmicNoise":
        return OhmicNoise(c * self.eta, self.E_cut, self.band, self.cutoff_sign)


@dataclass(frozen=True)
class OneOverFNoise:
    """Background-charge 1/f bath, W(E) = kappa alpha_f / (E coth(E/2k_BT))."""

    kappa_ueV2: float
    alpha_f: float
    band: Band

    def __post_init__(self):
        if not self.kappa_ueV2 > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa_ueV2!r}")
        if self.alpha_f < 0:
            raise ValueError(f"alpha_f must be >= 0, got {self.alpha_f!r}")

    def scaled(self, c: float) -> "OneOverFNoise":
        return OneOverFNoise(self.kappa_ueV2, c * self.alpha_f, self.band)


@dataclass(frozen=True)
class CompositeNoise:
    """Sum of at most one Ohmic and one 1/f member, each on its own band."""

    members: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        kinds = [type(m) for m in self.members]
        for m in self.members:
            if not isinstance(m, (OhmicNoise, OneOverFNoise)):
                raise TypeError(f"composite members must be Ohmic or 1/f noise, got {type(m).__name__}")
        if kinds.count(OhmicNoise) > 1 or kinds.count(OneOverFNoise) > 1:
            raise ValueError("composite noise holds at most one Ohmic and one 1/f member")

    @property
    def ohmic(self):
        return next((m for m in self.members if isinstance(m, OhmicNoise)), None)

    @property
    def oneoverf(self):
        return next((m for m in self.members if isinstance(m, OneOverFNoise)), None)


NoiseModel = Union[OhmicNoise, OneOverFNoise, CompositeNoise]


def members(model: NoiseModel) -> tuple:
    """The elementary noise sources making up ``model``."""
    if isinstance(model, CompositeNoise):
        return model.members
    return (model,)


def _positive(E):
    E = np.asarray(E, dtype=float)
    if np.any(E <= 0):
        raise ValueError("bath mode energy must be positive")
    return E


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def coth_thermal(E, T: Temperature):
    """coth(E / 2k_BT), with a series branch for tiny arguments."""
    x = _positive(E) / (2.0 * T.thermal_energy)
    small = x < _SMALL_X
    xs = np.where(small, x, 1.0)
    xl = np.where(small, 1.0, x)
    return _out(np.where(small, 1.0 / xs + xs / 3.0, 1.0 / np.tanh(xl)))


def e_coth_thermal(E, T: Temperature):
    """E coth(E / 2k_BT), finite as E -> 0 where it tends to 2k_BT."""
    E = _positive(E)
    two_kt = 2.0 * T.thermal_energy
    x = E / two_kt
    small = x < _SMALL_X
    xs = np.where(small, x, 1.0)
    xl = np.where(small, 1.0, x)
    return _out(np.where(small, two_kt * (1.0 + xs * xs / 3.0), E / np.tanh(xl)))


def weight_ohmic(E, eta: float, E_cut: float, cutoff_sign: int = -1):
    """Ohmic weight eta E exp(-E / E_cut); no temperature dependence."""
    E = _positive(E)
    return _out(eta * E * np.exp(cutoff_sign * E / E_cut))


def weight_oneoverf(E, kappa_ueV2: float, alpha_f: float, T: Temperature):
    """1/f weight kappa alpha_f / (E coth(E / 2k_BT))."""
    return _out(kappa_ueV2 * alpha_f / np.asarray(e_coth_thermal(E, T)))


def member_weight(m, E, T):
    """Unmasked weight of one elementary source."""
    if isinstance(m, OhmicNoise):
        return np.asarray(weight_ohmic(E, m.eta, m.E_cut, m.cutoff_sign))
    return np.asarray(weight_oneoverf(E, m.kappa_ueV2, m.alpha_f, T))


def weight(model: NoiseModel, E, T: Temperature):
    """Total weight of ``model`` at ``E``.

    Each source contributes only inside its own band; outside it the source
    is absent.
    """
    E = _positive(E)
    total = np.zeros_like(E)
    for m in members(model):
        inside = m.band.contains(E)
        total = total + np.where(inside, member_weight(m, E, T), 0.0)
    return _out(total)


def spectral_density_J(model: NoiseModel, E, T: Temperature):
    """Spectral density (pi/2) W(E), with hbar absorbed into energy units."""
    return _out(0.5 * math.pi * np.asarray(weight(model, E, T)))


def power_spectrum_S(model: NoiseModel, E, T: Temperature):
    """Symmetrized power spectrum J(E) coth(E / 2k_BT)."""
    return _out(np.asarray(spectral_density_J(model, E, T)) * np.asarray(coth_thermal(E, T)))
