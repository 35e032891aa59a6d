"""Short-time density-matrix evolution of the charge qubit and its decoherence.

States are written in the eigenbasis of the qubit Hamiltonian. Given the
dephasing kernel B^2(t), the open evolution is closed form, so everything here
is plain arithmetic. All functions broadcast over numpy arrays, which lets a
:class:`QubitState` hold a whole ensemble of states.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

_TOL = 1e-12


class ShortTimeWarning(UserWarning):
    """The requested time lies beyond the qubit's characteristic time 1/E_J."""


def _scalar(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


@dataclass(frozen=True)
class QubitState:
    """2x2 density matrix; rho01 is the conjugate of ``rho10``."""

    rho00: object
    rho11: object
    rho10: object = 0.0

    def __post_init__(self):
        r00 = np.asarray(self.rho00, dtype=float)
        r11 = np.asarray(self.rho11, dtype=float)
        r10 = np.asarray(self.rho10, dtype=complex)
        if np.any(r00 < -_TOL) or np.any(r11 < -_TOL):
            raise ValueError("populations must be non-negative")
        if np.any(np.abs(r00 + r11 - 1.0) > _TOL):
            raise ValueError("density matrix must have unit trace")
        if np.any(np.abs(r10) ** 2 > r00 * r11 + _TOL):
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "rho00", _scalar(r00))
        object.__setattr__(self, "rho11", _scalar(r11))
        object.__setattr__(self, "rho10", _scalar(r10))

    @classmethod
    def from_bloch(cls, x, y, z) -> "QubitState":
        """State with Bloch vector (x, y, z); requires x^2 + y^2 + z^2 <= 1."""
        return cls(0.5 * (1.0 + np.asarray(z)), 0.5 * (1.0 - np.asarray(z)), 0.5 * (np.asarray(x) + 1j * np.asarray(y)))

    @property
    def rho01(self):
        return np.conj(self.rho10)

    @property
    def trace(self):
        return self.rho00 + self.rho11

    def matrix(self) -> np.ndarray:
        """Dense 2x2 matrix (only for scalar states)."""
        return np.array([[self.rho00, self.rho01], [self.rho10, self.rho11]], dtype=complex)


GROUND = QubitState(1.0, 0.0)
EXCITED = QubitState(0.0, 1.0)


@dataclass(frozen=True)
class Deviation:
    """Traceless difference between open and ideal evolution; sigma00 = -sigma11."""

    sigma11: object
    sigma10: object


@dataclass(frozen=True)
class DynamicsParams:
    E_J_ueV: float
    b_squared: object = 0.0

    def __post_init__(self):
        if not self.E_J_ueV > 0:
            raise ValueError(f"E_J must be positive, got {self.E_J_ueV!r}")
        if np.any(np.asarray(self.b_squared) < 0):
            raise ValueError("B^2 must be non-negative")


def characteristic_time(E_J_ueV: float) -> float:
    """1/E_J in dimensionless time units."""
    return 1.0 / E_J_ueV


def _check_time(t, E_J, warn):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    if warn and np.any(t > characteristic_time(E_J)):
        warnings.warn(
            f"t = {np.max(t):.4g} exceeds the characteristic time 1/E_J = "
            f"{characteristic_time(E_J):.4g}; the short-time evolution is less accurate there",
            ShortTimeWarning,
            stacklevel=3,
        )
    return t


def evolve(rho0: QubitState, t, params: DynamicsParams) -> QubitState:
    """Open-system evolution to time ``t`` given the kernel value B^2(t).

    Populations relax toward 1/2 by the factor exp(-B^2) and the coherence
    mixes its ideal phase factor with the static one:

        rho10(t) = rho10 (1 - e^-B2 + e^{i t E_J} + e^{i t E_J - B2}) / 2
        rho11(t) = rho00 (1 - e^-B2) / 2 + rho11 (1 + e^-B2) / 2

    Emits :class:`ShortTimeWarning` for t > 1/E_J.
    """
    t = _check_time(t, params.E_J_ueV, warn=True)
    decay = np.exp(-np.asarray(params.b_squared, dtype=float))
    phase = np.exp(1j * t * params.E_J_ueV)
    rho10 = 0.5 * rho0.rho10 * (1.0 - decay + phase + phase * decay)
    rho11 = 0.5 * rho0.rho00 * (1.0 - decay) + 0.5 * rho0.rho11 * (1.0 + decay)
    return QubitState(1.0 - rho11, rho11, rho10)


def ideal_evolve(rho0: QubitState, t, E_J_ueV: float) -> QubitState:
    """Closed evolution: populations fixed, coherence rotated by E_J t."""
    t = _check_time(t, E_J_ueV, warn=False)
    return QubitState(
        rho0.rho00 + np.zeros_like(t), rho0.rho11 + np.zeros_like(t), rho0.rho10 * np.exp(1j * t * E_J_ueV)
    )


def deviation(rho0: QubitState, t, params: DynamicsParams) -> Deviation:
    """Closed form of evolve(...) - ideal_evolve(...)."""
    t = _check_time(t, params.E_J_ueV, warn=False)
    loss = 1.0 - np.exp(-np.asarray(params.b_squared, dtype=float))
    sigma10 = 0.5 * rho0.rho10 * loss * (1.0 - np.exp(1j * t * params.E_J_ueV))
    sigma11 = 0.5 * loss * (rho0.rho00 - rho0.rho11)
    return Deviation(_scalar(np.asarray(sigma11)), _scalar(np.asarray(sigma10)))


def norm_lambda(sigma: Deviation):
    """sqrt(|sigma10|^2 + sigma11^2)."""
    return _scalar(np.sqrt(np.abs(sigma.sigma10) ** 2 + np.abs(sigma.sigma11) ** 2))


def norm_closed_form(rho0: QubitState, t, params: DynamicsParams):
    """Norm of the deviation written directly in terms of the initial state."""
    t = _check_time(t, params.E_J_ueV, warn=False)
    loss = 1.0 - np.exp(-np.asarray(params.b_squared, dtype=float))
    bracket = (rho0.rho00 - rho0.rho11) ** 2 + 4.0 * np.abs(rho0.rho10) ** 2 * np.sin(0.5 * params.E_J_ueV * t) ** 2
    return _scalar(0.5 * loss * np.sqrt(bracket))


def decoherence_D(t, params: DynamicsParams):
    """Worst-case deviation norm over all initial states, (1 - e^-B2) / 2.

    ``params.b_squared`` must be the kernel value at ``t``. The supremum is
    reached by the two eigenstates (diagonal pure states), because
    (rho00 - rho11)^2 + 4|rho10|^2 <= 1 with equality only for pure states
    and the sin^2 factor never exceeds one.
    """
    _check_time(t, params.E_J_ueV, warn=False)
    return decoherence_from_b2(params.b_squared)


def decoherence_from_b2(b_squared):
    """(1 - exp(-B^2)) / 2 for a bare kernel value or array of values."""
    b2 = np.asarray(b_squared, dtype=float)
    if np.any(b2 < 0):
        raise ValueError("B^2 must be non-negative")
    return _scalar(-0.5 * np.expm1(-b2))
