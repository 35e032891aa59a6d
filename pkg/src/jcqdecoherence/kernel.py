"""Dephasing kernel B^2(t) and phase kernel C(t) of a pure-dephasing bath.

For a bath with weight W(E) on an energy band,

    B^2(t) = 8 int dE W(E) E^-2 sin^2(E t / 2) coth(E / 2k_BT)
    C(t)   =   int dE W(E) E^-2 (E t - sin E t)

Both integrals are evaluated with composite Gauss-Legendre rules in
``u = ln E``, refined dyadically until two successive levels agree.
:func:`b_squared_discrete` evaluates the same quantity as an explicit sum over
a finite set of bath modes and serves as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectra import (
    NoiseModel,
    Temperature,
    coth_thermal,
    member_weight,
    members,
)

_GL_ORDER = 10
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
# Hard cap on integrand evaluations in one refinement level.
_MAX_EVALS_PER_LEVEL = 4_000_000


class IntegrationError(RuntimeError):
    """Raised when the kernel quadrature fails to reach its tolerance."""

    def __init__(self, message, estimate=float("nan"), rel_error=float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.rel_error = rel_error


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    max_refinements: int = 40
    panels_per_decade: int = 8

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_refinements < 1 or self.panels_per_decade < 1:
            raise ValueError("max_refinements and panels_per_decade must be >= 1")


@dataclass(frozen=True)
class KernelRequest:
    model: NoiseModel
    T: Temperature
    t: float
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        if not self.t >= 0:
            raise ValueError(f"t must be >= 0, got {self.t!r}")


@dataclass(frozen=True)
class KernelResult:
    b_squared: float
    c_phase: float
    est_rel_error: float
    evaluations: int


def _x_minus_sin(x):
    # x - sin x loses all digits to cancellation for small x; use the series.
    small = x < 1e-2
    xs = np.where(small, x, 0.0)
    series = xs**3 / 6.0 * (1.0 - xs**2 / 20.0 * (1.0 - xs**2 / 42.0))
    return np.where(small, series, x - np.sin(x))


def _b2_density(m, E, T, t):
    """Integrand of B^2 with respect to E."""
    s = np.sin(0.5 * E * t)
    return 8.0 * member_weight(m, E, T) * np.asarray(coth_thermal(E, T)) * (s / E) ** 2


def _c_density(m, E, T, t):
    """Integrand of C with respect to E."""
    return member_weight(m, E, T) * _x_minus_sin(E * t) / E**2


def _base_panels(band, phase_rate, panels_per_decade):
    """Panel edges in ln E.

    Panels are uniform in ln E, then split further so that no panel spans
    more than pi/4 of oscillation phase ``phase_rate * E`` at its top edge.
    """
    u_lo, u_hi = math.log(band.E_lo), math.log(band.E_hi)
    n = max(1, math.ceil(math.log10(band.E_hi / band.E_lo) * panels_per_decade))
    coarse = np.linspace(u_lo, u_hi, n + 1)
    edges = [coarse[:1]]
    for a, b in zip(coarse[:-1], coarse[1:]):
        k = max(1, math.ceil(math.exp(b) * (b - a) * phase_rate / (math.pi / 4)))
        edges.append(np.linspace(a, b, k + 1)[1:])
    return np.concatenate(edges)


def _gauss_legendre(density, edges):
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    u = (a + half)[:, None] + half[:, None] * _GL_X[None, :]
    E = np.exp(u)
    vals = density(E) * E  # dE = E du
    return float(np.sum(half * (vals @ _GL_W))), u.size


def integrate_log_panels(density, band, phase_rate, spec: QuadratureSpec):
    """Integrate ``density(E)`` over ``band`` with dyadic panel refinement.

    Returns
    -------
    value : float
    rel_error : float
        Relative change between the last two refinement levels.
    evaluations : int
    """
    edges = _base_panels(band, phase_rate, spec.panels_per_decade)
    prev, evals = _gauss_legendre(density, edges)
    rel = math.inf
    for _ in range(spec.max_refinements):
        mids = 0.5 * (edges[:-1] + edges[1:])
        refined = np.empty(2 * edges.size - 1)
        refined[0::2] = edges
        refined[1::2] = mids
        edges = refined
        if edges.size * _GL_ORDER > _MAX_EVALS_PER_LEVEL:
            break
        cur, n = _gauss_legendre(density, edges)
        evals += n
        delta = abs(cur - prev)
        if delta == 0.0:
            return cur, 0.0, evals
        rel = delta / abs(cur) if cur != 0.0 else math.inf
        if rel <= spec.rel_tol:
            return cur, rel, evals
        prev = cur
    raise IntegrationError(
        f"kernel quadrature did not converge to rel_tol={spec.rel_tol:g} "
        f"(best estimate {prev!r}, last relative change {rel:.3g})",
        estimate=prev,
        rel_error=rel,
    )


def _integrate(model, T, t, spec, density, phase_rate):
    total = 0.0
    abs_err = 0.0
    evals = 0
    for m in members(model):
        value, rel, n = integrate_log_panels(
            lambda E, m=m: density(m, E, T, t), m.band, phase_rate, spec
        )
        total += value
        abs_err += rel * abs(value)
        evals += n
    rel_err = abs_err / abs(total) if total != 0.0 else 0.0
    return total, rel_err, evals


def kernel(req: KernelRequest) -> KernelResult:
    """Evaluate both B^2(t) and C(t) for ``req``."""
    if req.t == 0:
        return KernelResult(0.0, 0.0, 0.0, 0)
    b2, e1, n1 = _integrate(req.model, req.T, req.t, req.quadrature, _b2_density, 0.5 * req.t)
    c, e2, n2 = _integrate(req.model, req.T, req.t, req.quadrature, _c_density, req.t)
    return KernelResult(b2, c, max(e1, e2), n1 + n2)


def b_squared(model: NoiseModel, T: Temperature, t: float, quadrature=None, full_output=False):
    """Dephasing kernel B^2(t).

    Parameters
    ----------
    model : NoiseModel
        Ohmic, 1/f, or composite noise; each source is integrated over its
        own band.
    T : Temperature
    t : float
        Dimensionless time (phase ``E * t`` with E in ueV).
    quadrature : QuadratureSpec, optional
    full_output : bool, optional
        Also return the estimated relative error and the number of
        integrand evaluations.

    Raises
    ------
    IntegrationError
        If the refinement does not converge.
    """
    req = KernelRequest(model, T, t, quadrature or QuadratureSpec())
    if t == 0:
        out = (0.0, 0.0, 0)
    else:
        out = _integrate(model, T, t, req.quadrature, _b2_density, 0.5 * t)
    return out if full_output else out[0]


def c_phase(model: NoiseModel, T: Temperature, t: float, quadrature=None, full_output=False):
    """Phase kernel C(t); see :func:`b_squared` for the arguments."""
    req = KernelRequest(model, T, t, quadrature or QuadratureSpec())
    if t == 0:
        out = (0.0, 0.0, 0)
    else:
        out = _integrate(model, T, t, req.quadrature, _c_density, t)
    return out if full_output else out[0]


def mode_grid(band, n_modes: int):
    """Log-spaced bath modes: energies at bin centres (in ln E) and bin widths."""
    u = np.linspace(math.log(band.E_lo), math.log(band.E_hi), n_modes + 1)
    E = np.exp(0.5 * (u[:-1] + u[1:]))
    dE = np.diff(np.exp(u))
    return E, dE


def b_squared_discrete(model: NoiseModel, T: Temperature, t: float, n_modes: int) -> float:
    """B^2(t) as a sum over ``n_modes`` discrete bath modes per source.

    Mode k carries coupling |g_k|^2 = W(E_k) dE_k, so the sum
    8 sum_k |g_k|^2 / E_k^2 sin^2(E_k t / 2) coth(E_k / 2k_BT)
    tends to :func:`b_squared` as ``n_modes`` grows.
    """
    if n_modes < 2:
        raise ValueError(f"n_modes must be >= 2, got {n_modes!r}")
    if t == 0:
        return 0.0
    total = 0.0
    for m in members(model):
        E, dE = mode_grid(m.band, n_modes)
        g2 = member_weight(m, E, T) * dE
        s = np.sin(0.5 * E * t)
        total += float(np.sum(8.0 * g2 / E**2 * s**2 * np.asarray(coth_thermal(E, T))))
    return total


def b_squared_discrete_converged(
    model: NoiseModel, T: Temperature, t: float, rel_tol=1e-6, n_start=64, n_max=2**24
):
    """Double the mode count until the sum changes by less than ``rel_tol``.

    Returns
    -------
    value : float
    n_modes : int
        Mode count of the returned value.
    """
    n = n_start
    prev = b_squared_discrete(model, T, t, n)
    while n < n_max:
        n *= 2
        cur = b_squared_discrete(model, T, t, n)
        if abs(cur - prev) <= rel_tol * abs(cur):
            return cur, n
        prev = cur
    raise IntegrationError(
        f"mode sum not converged at n_modes={n}", estimate=prev, rel_error=abs(cur - prev) / abs(cur)
    )
