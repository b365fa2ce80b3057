"""Parsing of unit-suffixed quantities such as ``"729nm"``, ``"4mW"`` or ``"10lambda"``."""

from __future__ import annotations

import math
import re

from .errors import TwistkickError

__all__ = ["UnitError", "parse_quantity", "LENGTH", "POWER", "TIME", "MASS", "AREA", "ANGLE", "VISCOSITY", "PLAIN"]


class UnitError(TwistkickError, ValueError):
    pass


LENGTH = {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "μm": 1e-6, "µm": 1e-6, "nm": 1e-9, "pm": 1e-12}
POWER = {"W": 1.0, "kW": 1e3, "mW": 1e-3, "uW": 1e-6, "μW": 1e-6, "µW": 1e-6}
TIME = {"s": 1.0, "ms": 1e-3, "us": 1e-6, "μs": 1e-6, "µs": 1e-6, "ns": 1e-9, "ps": 1e-12}
MASS = {"kg": 1.0, "g": 1e-3, "u": 1.66053906660e-27}
AREA = {"m2": 1.0, "m^2": 1.0, "um2": 1e-12, "um^2": 1e-12, "μm2": 1e-12, "μm^2": 1e-12, "nm2": 1e-18, "nm^2": 1e-18}
ANGLE = {"rad": 1.0, "mrad": 1e-3, "deg": math.pi / 180.0}
VISCOSITY = {"Pa*s": 1.0, "Pa.s": 1.0, "mPa*s": 1e-3, "mPa.s": 1e-3, "cP": 1e-3}
PLAIN: dict = {}

_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(.*?)\s*$")


def parse_quantity(text, units: dict, wavelength: float | None = None, what: str = "value") -> float:
    """Convert ``text`` to SI using the suffix table ``units``.

    Bare numbers are taken as SI.  Length tables also accept the suffix
    ``lambda`` (multiples of ``wavelength``).
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    match = _NUMBER.match(str(text))
    if not match:
        raise UnitError(f"cannot parse {what} {text!r}")
    number, suffix = float(match.group(1)), match.group(2)
    if not suffix:
        return number
    if suffix in ("lambda", "λ") and units is LENGTH:
        if wavelength is None:
            raise UnitError(f"{what} {text!r} is relative to the wavelength, which is not set")
        return number * wavelength
    if suffix not in units:
        allowed = ", ".join(sorted(units)) or "none"
        raise UnitError(f"unknown unit {suffix!r} for {what} (allowed: {allowed})")
    return number * units[suffix]
