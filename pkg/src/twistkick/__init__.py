"""Canonical versus Belinfante momentum densities of twisted (Bessel) light."""

__version__ = "0.1.0"

from .beams import Amplitude, BeamSpec, FieldSample, fields, normalize_amplitude, vector_potential, wavenumbers
from .densities import (
    DensityProfile,
    Quantity,
    TensorChoice,
    density_from_fields,
    jz_density,
    offaxis_kick_density,
    photon_number_density,
    pphi_density,
    profile,
    pz_density,
    superkick,
    sz_poynting,
)
from .errors import DomainError, PoleError, StepUnderflowError, TwistkickError, UnsupportedConfigurationError
from .specfun import bessel_j, bessel_j_prime
