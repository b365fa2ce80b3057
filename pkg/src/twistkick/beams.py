"""Twisted-beam parameterisation and field evaluation.

All quantities are SI.  Fields are written as complex phasors carrying the
full ``exp(i(k_z z - w t + m phi))`` dependence; the physical potential is
the real part and ``E = -dA/dt`` (no scalar potential).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import constants
from scipy.integrate import quad

from .errors import DomainError, StepUnderflowError, UnsupportedConfigurationError
from .specfun import bessel_j, bessel_j_prime

__all__ = [
    "BeamSpec",
    "Amplitude",
    "FieldSample",
    "EnvelopeSample",
    "Wavenumbers",
    "wavenumbers",
    "envelope_u",
    "power_integral",
    "normalize_amplitude",
    "vector_potential",
    "potential_gradient",
    "fields",
    "fd_step",
]

PARAXIAL_PITCH_LIMIT = 0.3
POWER_CUTOFF_WIDTHS = 6.0
POWER_RTOL = 1e-9
FD_STEPS_PER_WAVELENGTH = 2000


@dataclass(frozen=True)
class BeamSpec:
    """Physical description of a (Bessel or Bessel-Gauss) twisted beam.

    ``total_am`` is m_gamma, ``helicity`` is Lambda and ``spin`` the paraxial
    spin projection sigma_z (defaults to the helicity, i.e. pure circular
    polarisation).  The paraxial OAM index is always ``total_am - helicity``.
    ``envelope_width=None`` gives the pure Bessel beam.  With ``strict=False``
    a zero pitch angle is tolerated (kappa = 0).
    """

    wavelength: float
    pitch_angle: float
    total_am: int
    helicity: int = 1
    envelope_width: Optional[float] = None
    power: float = 4e-3
    spin: Optional[float] = None
    strict: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise DomainError(f"wavelength must be positive, got {self.wavelength}")
        lo_ok = self.pitch_angle > 0 or (not self.strict and self.pitch_angle == 0)
        if not (lo_ok and self.pitch_angle < math.pi / 2):
            raise DomainError(f"pitch angle must lie in (0, pi/2), got {self.pitch_angle}")
        if int(self.total_am) != self.total_am:
            raise DomainError(f"total angular momentum must be an integer, got {self.total_am}")
        object.__setattr__(self, "total_am", int(self.total_am))
        if self.helicity not in (1, -1):
            raise DomainError(f"helicity must be +1 or -1, got {self.helicity}")
        object.__setattr__(self, "helicity", int(self.helicity))
        if self.envelope_width is not None and not self.envelope_width > 0:
            raise DomainError(f"envelope width must be positive, got {self.envelope_width}")
        if not (math.isfinite(self.power) and self.power > 0):
            raise DomainError(f"power must be positive, got {self.power}")
        if self.spin is not None and not -1.0 <= self.spin <= 1.0:
            raise DomainError(f"spin projection must lie in [-1, 1], got {self.spin}")

    @property
    def oam(self) -> int:
        """Paraxial orbital index ``ell = m_gamma - Lambda``."""
        return self.total_am - self.helicity

    @property
    def sigma_z(self) -> float:
        return float(self.helicity if self.spin is None else self.spin)

    @property
    def is_circular(self) -> bool:
        return self.sigma_z == self.helicity

    @property
    def paraxial(self) -> bool:
        return self.pitch_angle <= PARAXIAL_PITCH_LIMIT


@dataclass(frozen=True)
class Amplitude:
    """Vector-potential amplitude A0 in V*s/m."""

    a0: float

    def __post_init__(self):
        if not (math.isfinite(self.a0) and self.a0 > 0):
            raise DomainError(f"amplitude must be positive, got {self.a0}")


class Wavenumbers(NamedTuple):
    k: float
    k_z: float
    kappa: float
    omega: float


class EnvelopeSample(NamedTuple):
    u_mag: np.ndarray
    du2_drho: np.ndarray


@dataclass(frozen=True)
class FieldSample:
    a_complex: np.ndarray
    e_field: np.ndarray
    b_field: np.ndarray


def wavenumbers(spec: BeamSpec) -> Wavenumbers:
    k = 2.0 * math.pi / spec.wavelength
    return Wavenumbers(
        k=k,
        k_z=k * math.cos(spec.pitch_angle),
        kappa=k * math.sin(spec.pitch_angle),
        omega=constants.c * k,
    )


def _gaussian(spec: BeamSpec, rho):
    if spec.envelope_width is None:
        return np.ones_like(rho)
    return np.exp(-((rho / spec.envelope_width) ** 2))


def _check_rho(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0) or not np.all(np.isfinite(rho)):
        raise DomainError("radius must be finite and non-negative")
    return rho


def _unwrap(value):
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value


def envelope_u(spec: BeamSpec, amp: Amplitude, rho, slowly_varying: bool = False) -> EnvelopeSample:
    """Radial mode amplitude ``|u| = A0 |J_l(kappa rho)| exp(-rho^2/w0^2)`` and ``d|u|^2/drho``.

    With ``slowly_varying=True`` the Gaussian is treated as locally constant
    in the derivative (only the Bessel factor is differentiated, the envelope
    multiplied afterwards).
    """
    rho = _check_rho(rho)
    ell = spec.oam
    kappa = wavenumbers(spec).kappa
    x = kappa * rho
    j = bessel_j(ell, x)
    jp = bessel_j_prime(ell, x)
    g2 = _gaussian(spec, rho) ** 2
    a2 = amp.a0**2
    du2 = a2 * 2.0 * kappa * j * jp * g2
    if spec.envelope_width is not None and not slowly_varying:
        du2 = du2 - a2 * j * j * g2 * 4.0 * rho / spec.envelope_width**2
    u_mag = amp.a0 * np.abs(j) * np.sqrt(g2)
    return EnvelopeSample(_unwrap(u_mag), _unwrap(du2))


def power_integral(spec: BeamSpec, amp: Amplitude, rtol: float = POWER_RTOL) -> float:
    """Time-averaged power carried by the paraxial Poynting flux, in watts."""
    if spec.envelope_width is None:
        raise UnsupportedConfigurationError(
            "a pure Bessel beam carries infinite power; set an envelope width"
        )
    k, _, kappa, omega = wavenumbers(spec)
    w0 = spec.envelope_width
    ell = spec.oam

    def radial(r):
        return bessel_j(ell, kappa * r) ** 2 * math.exp(-2.0 * r * r / (w0 * w0)) * r

    integral, _ = quad(radial, 0.0, POWER_CUTOFF_WIDTHS * w0, epsrel=rtol, epsabs=0.0, limit=400)
    return omega * k * amp.a0**2 / (2.0 * constants.mu_0) * 2.0 * math.pi * integral


def normalize_amplitude(spec: BeamSpec) -> Amplitude:
    """Amplitude A0 for which the integrated Poynting flux equals ``spec.power``."""
    unit_power = power_integral(spec, Amplitude(1.0))
    return Amplitude(math.sqrt(spec.power / unit_power))


def _eta(lam: int) -> np.ndarray:
    return np.array([-lam, -1j, 0.0]) / math.sqrt(2.0)


_ETA_Z = np.array([0.0, 0.0, 1.0], dtype=complex)


def vector_potential(spec: BeamSpec, amp: Amplitude, rho, phi, z=0.0, t=0.0) -> np.ndarray:
    """Complex vector potential of the exact Bessel beam of helicity Lambda.

    Returns Cartesian components in the last axis (shape ``(..., 3)``).  When
    the beam has an envelope width the Gaussian multiplies all three terms.
    """
    rho = _check_rho(rho)
    rho, phi, z, t = np.broadcast_arrays(rho, np.asarray(phi, float), np.asarray(z, float), np.asarray(t, float))
    lam = spec.helicity
    m = spec.total_am
    _, k_z, kappa, omega = wavenumbers(spec)
    theta = spec.pitch_angle
    x = kappa * rho
    cos2 = math.cos(theta / 2.0) ** 2
    sin2 = math.sin(theta / 2.0) ** 2

    c_plus = cos2 * bessel_j(m - lam, x) * np.exp(-1j * lam * phi)
    c_zero = 1j / math.sqrt(2.0) * math.sin(theta) * bessel_j(m, x)
    c_minus = -sin2 * bessel_j(m + lam, x) * np.exp(1j * lam * phi)
    vec = (
        c_plus[..., None] * _eta(lam)
        + np.asarray(c_zero)[..., None] * _ETA_Z
        + c_minus[..., None] * _eta(-lam)
    )
    phase = -1j * lam * amp.a0 * np.exp(1j * (k_z * z - omega * t + m * phi)) * _gaussian(spec, rho)
    return phase[..., None] * vec


def _potential_xyz(spec, amp, x, y, z):
    return vector_potential(spec, amp, np.hypot(x, y), np.arctan2(y, x), z, 0.0)


def fd_step(spec: BeamSpec) -> float:
    return spec.wavelength / FD_STEPS_PER_WAVELENGTH


def potential_gradient(spec: BeamSpec, amp: Amplitude, rho: float, phi: float, z: float = 0.0) -> np.ndarray:
    """Finite-difference Jacobian ``grad[i, j] = d_i A^j`` of the complex phasor at ``t = 0``.

    Uses the fourth-order central stencil with step ``lambda/2000`` in each
    Cartesian direction.
    """
    h = fd_step(spec)
    if rho <= h:
        raise StepUnderflowError(f"radius {rho} is within one finite-difference step ({h}) of the axis")
    x0, y0 = rho * math.cos(phi), rho * math.sin(phi)
    offsets = np.array([-2.0, -1.0, 1.0, 2.0]) * h
    weights = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * h)
    grad = np.empty((3, 3), dtype=complex)
    for axis in range(3):
        pts = np.array([x0, y0, z], dtype=float)[:, None].repeat(4, axis=1)
        pts[axis] += offsets
        samples = _potential_xyz(spec, amp, pts[0], pts[1], pts[2])
        grad[axis] = weights @ samples
    return grad


def _curl(grad: np.ndarray) -> np.ndarray:
    # grad[i, j] = d_i A^j
    return np.array([
        grad[1, 2] - grad[2, 1],
        grad[2, 0] - grad[0, 2],
        grad[0, 1] - grad[1, 0],
    ])


def fields(spec: BeamSpec, amp: Amplitude, rho: float, phi: float, z: float = 0.0, t: float = 0.0) -> FieldSample:
    """Potential phasor and physical E, B at one space-time point.

    E is the real part of ``i w A``; B is the finite-difference curl of the
    real potential.
    """
    omega = wavenumbers(spec).omega
    grad = potential_gradient(spec, amp, rho, phi, z)
    a = vector_potential(spec, amp, rho, phi, z, t)
    rot = np.exp(-1j * omega * t)
    e_field = np.real(1j * omega * a)
    b_field = _curl(np.real(grad * rot))
    return FieldSample(a_complex=a, e_field=e_field, b_field=b_field)
