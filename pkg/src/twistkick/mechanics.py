"""Mechanical response of test objects to a twisted beam.

Covers a hollow cylinder on the beam axis (free-space spin-up and viscous
terminal rotation), a two-ion rotor kicked once per excited-state
lifetime, a particle revolving off axis, and longitudinal radiation
pressure including detection of negative-force (tractor) regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import constants
from scipy.integrate import quad

from .beams import Amplitude, BeamSpec, envelope_u, wavenumbers
from .densities import (
    TensorChoice,
    jz_density,
    offaxis_kick_density,
    pz_density,
    superkick,
)
from .errors import DomainError, UnsupportedConfigurationError
from .specfun import bessel_zeros

__all__ = [
    "CA40_ION_MASS",
    "CA_4P32_LIFETIME",
    "CA_4P12_LIFETIME",
    "KEROSENE_VISCOSITY",
    "WATER_DENSITY_X2",
    "CylinderSpec",
    "RotorSpec",
    "ParticleSpec",
    "ScenarioResult",
    "cylinder_torque",
    "cylinder_moment_of_inertia",
    "cylinder_angular_acceleration",
    "cylinder_terminal_frequency",
    "rotor_angular_acceleration",
    "rotor_sweep",
    "revolution_frequency",
    "intensity_maxima",
    "longitudinal_force",
    "tractor_regions",
]

# 40Ca atomic mass 39.9625909 u, less one electron for the singly charged ion.
CA40_ION_MASS = 39.9625909 * constants.atomic_mass - constants.electron_mass
# Ca+ 4P_{3/2} and 4P_{1/2} lifetimes.
CA_4P32_LIFETIME = 6.924e-9
CA_4P12_LIFETIME = 7.098e-9
KEROSENE_VISCOSITY = 1.64e-3
WATER_DENSITY_X2 = 2000.0

UNITS = frozenset({"N*m", "kg*m^2", "rad/s^2", "Hz", "rad/s", "N", "kg*m/s", "m"})


@dataclass(frozen=True)
class CylinderSpec:
    mean_radius: float
    wall_thickness: float
    length: float
    mass_density: float = WATER_DENSITY_X2

    def __post_init__(self):
        for name in ("mean_radius", "wall_thickness", "length", "mass_density"):
            if not getattr(self, name) > 0:
                raise DomainError(f"cylinder {name} must be positive, got {getattr(self, name)}")
        if self.wall_thickness >= 2 * self.mean_radius:
            raise DomainError("wall thickness must be less than twice the mean radius")


@dataclass(frozen=True)
class RotorSpec:
    arm_radius: float
    ion_mass: float = CA40_ION_MASS
    excited_lifetime: float = CA_4P32_LIFETIME

    def __post_init__(self):
        for name in ("arm_radius", "ion_mass", "excited_lifetime"):
            if not getattr(self, name) > 0:
                raise DomainError(f"rotor {name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class ParticleSpec:
    cross_section: float
    drag_coefficient: Optional[float] = None

    def __post_init__(self):
        if not self.cross_section > 0:
            raise DomainError(f"cross section must be positive, got {self.cross_section}")
        if self.drag_coefficient is not None and not self.drag_coefficient > 0:
            raise DomainError(f"drag coefficient must be positive, got {self.drag_coefficient}")


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    value: float
    units: str
    tensor_choice: Optional[TensorChoice] = None

    def __post_init__(self):
        if self.units not in UNITS:
            raise ValueError(f"unknown units {self.units!r}")


def cylinder_torque(spec: BeamSpec, amp: Amplitude, cyl: CylinderSpec, choice, annular: bool = False,
                    slowly_varying_envelope: bool = True) -> float:
    """Torque on a fully absorbing hollow cylinder coaxial with the beam, in N*m.

    By default the density is taken at the mean radius times the annulus
    area (thin wall).  ``annular=True`` integrates ``c J_z 2 pi rho`` across
    the wall instead.  The Belinfante density treats the Gaussian envelope
    as slowly varying unless told otherwise.
    """
    c = constants.c

    def density(r):
        return jz_density(spec, amp, r, choice, slowly_varying_envelope=slowly_varying_envelope)

    if not annular:
        return 2.0 * math.pi * cyl.mean_radius * cyl.wall_thickness * c * density(cyl.mean_radius)
    lo = cyl.mean_radius - 0.5 * cyl.wall_thickness
    hi = cyl.mean_radius + 0.5 * cyl.wall_thickness
    value, _ = quad(lambda r: c * density(r) * 2.0 * math.pi * r, lo, hi, epsrel=1e-10, epsabs=0.0)
    return value


def cylinder_moment_of_inertia(cyl: CylinderSpec) -> float:
    return 2.0 * math.pi * cyl.mass_density * cyl.mean_radius**3 * cyl.wall_thickness * cyl.length


def cylinder_angular_acceleration(spec: BeamSpec, amp: Amplitude, cyl: CylinderSpec, choice, **kwargs) -> float:
    return cylinder_torque(spec, amp, cyl, choice, **kwargs) / cylinder_moment_of_inertia(cyl)


def cylinder_terminal_frequency(spec: BeamSpec, amp: Amplitude, cyl: CylinderSpec, viscosity: float, choice,
                                **kwargs) -> float:
    """Steady rotation frequency (Hz) in a fluid with drag torque ``4 pi eta rho^2 L Omega``."""
    if not viscosity > 0:
        raise DomainError(f"viscosity must be positive, got {viscosity}")
    torque = cylinder_torque(spec, amp, cyl, choice, **kwargs)
    omega = torque / (4.0 * math.pi * viscosity * cyl.mean_radius**2 * cyl.length)
    return omega / (2.0 * math.pi)


def rotor_angular_acceleration(spec: BeamSpec, rotor: RotorSpec, choice) -> float:
    """Angular acceleration (rad/s^2) from one superkick per excited-state lifetime."""
    rho = rotor.arm_radius
    return superkick(spec, rho, choice) / (rotor.ion_mass * rho * rotor.excited_lifetime)


def rotor_sweep(spec: BeamSpec, radii, choice, ion_mass: float = CA40_ION_MASS,
                lifetime: float = CA_4P32_LIFETIME) -> np.ndarray:
    """Rotor angular acceleration over an array of arm radii."""
    radii = np.asarray(radii, dtype=float)
    return superkick(spec, radii, choice) / (ion_mass * radii * lifetime)


def revolution_frequency(spec: BeamSpec, amp: Amplitude, particle: ParticleSpec, rho, choice,
                         calibration: Optional[float] = None, **kwargs):
    """Revolution rate (rad/s) of a small particle kicked azimuthally at radius rho.

    Either ``calibration`` (rad/s per unit momentum density) or the
    particle's drag coefficient must be given; the calibration wins when
    both are present.
    """
    density = offaxis_kick_density(spec, amp, rho, choice, **kwargs)
    if calibration is not None:
        if not calibration > 0:
            raise DomainError("calibration must be positive")
        return calibration * density
    if particle.drag_coefficient is None:
        raise UnsupportedConfigurationError("revolution frequency needs a calibration or a drag coefficient")
    return particle.cross_section * constants.c * density / (particle.drag_coefficient * np.asarray(rho))


def intensity_maxima(spec: BeamSpec, amp: Amplitude, rho_max: float, n_scan: int = 4000,
                     slowly_varying_envelope: bool = False) -> np.ndarray:
    """Radii in ``(0, rho_max)`` where ``d|u|^2/drho`` falls through zero (ring peaks)."""
    def slope(r):
        return envelope_u(spec, amp, r, slowly_varying=slowly_varying_envelope).du2_drho

    grid = np.linspace(0.0, rho_max, n_scan + 1)[1:]
    values = np.asarray(slope(grid))
    peaks = []
    for i in np.nonzero((values[:-1] > 0) & (values[1:] <= 0))[0]:
        a, b = grid[i], grid[i + 1]
        while b - a > 1e-15 * b:
            mid = 0.5 * (a + b)
            if mid in (a, b):
                break
            if slope(mid) > 0:
                a = mid
            else:
                b = mid
        peaks.append(0.5 * (a + b))
    return np.array(peaks)


def longitudinal_force(spec: BeamSpec, amp: Amplitude, particle: ParticleSpec, rho, choice):
    """Radiation force (N) on a fully absorbing particle of cross section sigma."""
    return particle.cross_section * constants.c * np.asarray(pz_density(spec, amp, rho, choice))[()]


def _refine_crossing(f, a: float, b: float, rtol: float) -> float:
    # f(a) and f(b) have opposite signs
    fa_neg = f(a) < 0
    while b - a > rtol * max(abs(a), abs(b)):
        mid = 0.5 * (a + b)
        if mid in (a, b):
            break
        if (f(mid) < 0) == fa_neg:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def tractor_regions(spec: BeamSpec, amp: Amplitude, rho_max: float, n_scan: int = 4000,
                    choice=TensorChoice.BELINFANTE, rtol: float = 1e-10) -> list[tuple[float, float]]:
    """Maximal radius intervals in ``[0, rho_max]`` where the longitudinal density is negative.

    Endpoints are refined by bisection.  The canonical density is never
    negative, so ``choice="canonical"`` is a diagnostic that returns ``[]``.
    """
    if not rho_max > 0:
        raise DomainError(f"rho_max must be positive, got {rho_max}")
    if n_scan < 1000:
        raise DomainError("tractor scan needs at least 1000 points")

    def f(r):
        return pz_density(spec, amp, r, choice)

    grid = np.linspace(0.0, rho_max, n_scan + 1)
    negative = np.asarray(f(grid)) < 0
    # a zero of J_{m-Lambda} narrower than the grid spacing would be missed
    kappa = wavenumbers(spec).kappa
    extra = [z / kappa for z in bessel_zeros(spec.oam, kappa * rho_max)] if kappa > 0 else []
    for r in extra:
        i = min(int(np.searchsorted(grid, r)), len(grid) - 1)
        if f(r) < 0 and not negative[max(i - 1, 0)] and not negative[i]:
            grid = np.insert(grid, i, r)
            negative = np.insert(negative, i, True)

    regions = []
    i = 0
    n = len(grid)
    while i < n:
        if not negative[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and negative[j + 1]:
            j += 1
        lo = grid[i] if i == 0 else _refine_crossing(f, grid[i - 1], grid[i], rtol)
        hi = grid[j] if j == n - 1 else _refine_crossing(f, grid[j], grid[j + 1], rtol)
        regions.append((float(lo), float(hi)))
        i = j + 1
    return regions
