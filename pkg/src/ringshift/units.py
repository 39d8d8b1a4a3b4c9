"""Physical constants and characteristic energy scales.

Every quantity in the package is expressed in eV (energies) and nm
(lengths). Masses enter only through rest energies m c^2 in eV, so the
natural-unit (hbar = c = 1) formulas become ordinary arithmetic once the
products ``hbar_c`` and ``electron_rest_energy`` are reinserted.
"""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass, field, fields, replace
from enum import Enum

from scipy import constants as sc

__all__ = [
    "PhysicalConstants",
    "CODATA",
    "Ring1DSpec",
    "CutoffWindow",
    "WindowStatus",
    "WindowReport",
    "epsilon0",
    "characteristic_chi",
    "check_cutoff_window",
    "load_constants",
    "default_constants",
    "CONSTANTS_ENV_VAR",
]

CONSTANTS_ENV_VAR = "RINGSHIFT_CONSTANTS"


@dataclass(frozen=True)
class PhysicalConstants:
    """Fine-structure constant, electron rest energy (eV) and hbar*c (eV nm)."""

    alpha: float = sc.fine_structure
    electron_rest_energy: float = sc.physical_constants[
        "electron mass energy equivalent in MeV"
    ][0] * 1e6
    hbar_c: float = sc.hbar * sc.c / sc.e * 1e9

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{f.name} must be finite and positive, got {value!r}")

    def rest_energy(self, mass_ratio: float = 1.0) -> float:
        """Rest energy m* c^2 in eV of a particle with m* = mass_ratio * m_e."""
        return mass_ratio * self.electron_rest_energy

    def kinetic_scale(self, mass_ratio: float = 1.0) -> float:
        """hbar^2 / (2 m*) in eV nm^2."""
        return self.hbar_c**2 / (2.0 * self.rest_energy(mass_ratio))


CODATA = PhysicalConstants()


def load_constants(path: str | os.PathLike) -> PhysicalConstants:
    """Read a ``[constants]`` INI section overriding individual CODATA values.

    Unknown keys are rejected so that a typo cannot silently fall back to the
    default value.
    """
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    if not parser.has_section("constants"):
        raise ValueError(f"{path}: missing [constants] section")
    known = {f.name for f in fields(PhysicalConstants)}
    overrides = {}
    for key, raw in parser.items("constants"):
        if key not in known:
            raise ValueError(f"{path}: unknown constant {key!r}")
        overrides[key] = float(raw)
    return replace(CODATA, **overrides)


def default_constants() -> PhysicalConstants:
    """CODATA values, or the file named by ``$RINGSHIFT_CONSTANTS`` if set."""
    path = os.environ.get(CONSTANTS_ENV_VAR)
    if path:
        return load_constants(path)
    return CODATA


@dataclass(frozen=True)
class Ring1DSpec:
    """A one-dimensional ring of radius ``radius`` (nm) threaded by ``flux`` quanta.

    ``mass_ratio`` is m*/m_e. The default of 1 uses the free electron mass;
    pass an effective mass explicitly for semiconductor band masses.
    """

    radius: float
    flux: float = 0.0
    mass_ratio: float = 1.0
    constants: PhysicalConstants = field(default=CODATA, repr=False)

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if not (self.mass_ratio > 0 and math.isfinite(self.mass_ratio)):
            raise ValueError(f"mass_ratio must be positive, got {self.mass_ratio!r}")
        if not math.isfinite(self.flux):
            raise ValueError(f"flux must be finite, got {self.flux!r}")

    @property
    def epsilon0(self) -> float:
        return epsilon0(self)

    @property
    def chi(self) -> float:
        return characteristic_chi(self)

    @property
    def rest_energy(self) -> float:
        return self.constants.rest_energy(self.mass_ratio)


def epsilon0(spec: Ring1DSpec) -> float:
    """Azimuthal energy scale hbar^2 / (2 m* R^2) in eV."""
    return spec.constants.kinetic_scale(spec.mass_ratio) / spec.radius**2


def characteristic_chi(spec: Ring1DSpec) -> float:
    """Shift unit chi = alpha eps0^2 / (m* c^2) in eV."""
    return spec.constants.alpha * epsilon0(spec) ** 2 / spec.rest_energy


class WindowStatus(str, Enum):
    VALID = "valid"
    BELOW_WINDOW = "below_window"
    ABOVE_WINDOW = "above_window"


@dataclass(frozen=True)
class WindowReport:
    """Outcome of :func:`check_cutoff_window`.

    ``lower_ratio`` is k_max / reference_energy and ``upper_ratio`` is
    sqrt(m c^2 * reference_energy) / k_max; both must reach the softness
    factor for the cut-off to be considered valid.
    """

    status: WindowStatus
    lower_ratio: float
    upper_ratio: float

    @property
    def valid(self) -> bool:
        return self.status is WindowStatus.VALID


@dataclass(frozen=True)
class CutoffWindow:
    """Virtual-photon cut-off together with the level scale it must exceed."""

    k_max: float
    reference_energy: float
    softness_factor: float = 5.0
    rest_energy: float = CODATA.electron_rest_energy

    def __post_init__(self):
        if not self.k_max > 0:
            raise ValueError(f"k_max must be positive, got {self.k_max!r}")
        if not self.reference_energy > 0:
            raise ValueError(
                f"reference_energy must be positive, got {self.reference_energy!r}"
            )
        if not self.softness_factor >= 1:
            raise ValueError("softness_factor must be >= 1")


def check_cutoff_window(window: CutoffWindow) -> WindowReport:
    """Classify ``k_max`` against eps << k_max << sqrt(m c^2 eps).

    Being outside the window is reported, never raised: callers still get
    their shift and decide what to do with the flag.
    """
    lower = window.k_max / window.reference_energy
    upper = math.sqrt(window.rest_energy * window.reference_energy) / window.k_max
    if lower < window.softness_factor:
        status = WindowStatus.BELOW_WINDOW
    elif upper < window.softness_factor:
        status = WindowStatus.ABOVE_WINDOW
    else:
        status = WindowStatus.VALID
    return WindowReport(status, lower, upper)
