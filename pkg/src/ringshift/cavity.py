"""Second-order shift of ring levels from a single linearly polarized cavity mode.

The mode amplitude ``A0`` is the vector-potential amplitude in Gaussian
natural units (hbar = c = 1) expressed in eV, so that alpha * A0^2 is the
square of the coupling energy e*A0. :func:`amplitude_from_si` converts an
SI amplitude in V s / m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as sc

from .ring1d import ShiftResult, lambda_pair
from .units import CODATA, PhysicalConstants, Ring1DSpec, characteristic_chi, epsilon0

__all__ = [
    "CavityModeSpec",
    "ResonanceError",
    "DEFAULT_RESONANCE_TOLERANCE",
    "cavity_shift",
    "vacuum_cavity_shift",
    "cavity_prefactor",
    "amplitude_from_si",
]

DEFAULT_RESONANCE_TOLERANCE = 1e-6


class ResonanceError(ArithmeticError):
    """A perturbative denominator omega +- eps0*Lambda is (nearly) zero."""

    def __init__(self, label: str, denominator: float, threshold: float):
        self.label = label
        self.denominator = denominator
        self.threshold = threshold
        super().__init__(
            f"near resonance in denominator {label}: |{denominator:.6g} eV| <= "
            f"{threshold:.3g} eV"
        )


@dataclass(frozen=True)
class CavityModeSpec:
    omega: float
    amplitude: float
    photon_number: int = 0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not math.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")
        if int(self.photon_number) != self.photon_number or self.photon_number < 0:
            raise ValueError(
                f"photon_number must be a non-negative integer, got {self.photon_number!r}"
            )


def amplitude_from_si(a_si: float, constants: PhysicalConstants = CODATA) -> float:
    """Natural-unit amplitude (eV) for an SI vector potential ``a_si`` in V s/m."""
    # e * A_SI * c in eV equals A_SI * c numerically; divide out e = sqrt(alpha)
    return a_si * sc.c / math.sqrt(constants.alpha)


def cavity_prefactor(spec: Ring1DSpec, cavity: CavityModeSpec) -> float:
    """alpha A0^2 eps0 / (4 m* c^2) in eV^2."""
    return (
        spec.constants.alpha * cavity.amplitude**2 * epsilon0(spec)
        / (4.0 * spec.rest_energy)
    )


def _denominators(spec, cavity, m):
    eps0 = epsilon0(spec)
    lam = lambda_pair(m + spec.flux)
    lp, lm = lam.lambda_plus, lam.lambda_minus
    w = cavity.omega
    return lp, lm, {
        "omega+eps0*Lambda_plus": w + eps0 * lp,
        "omega-eps0*Lambda_minus": w - eps0 * lm,
        "omega-eps0*Lambda_plus": w - eps0 * lp,
        "omega+eps0*Lambda_minus": w + eps0 * lm,
    }


def cavity_shift(
    spec: Ring1DSpec,
    cavity: CavityModeSpec,
    m: int,
    resonance_tolerance: float = DEFAULT_RESONANCE_TOLERANCE,
) -> ShiftResult:
    """Shift of level ``m`` in a cavity holding ``cavity.photon_number`` photons.

    Emission terms carry N + 1, absorption terms N. Raises
    :class:`ResonanceError` when a denominator that enters the result lies
    within ``resonance_tolerance * eps0`` of zero; for N = 0 the two
    absorption denominators do not enter.
    """
    lp, lm, den = _denominators(spec, cavity, m)
    threshold = resonance_tolerance * epsilon0(spec)
    active = list(den.items()) if cavity.photon_number else list(den.items())[:2]
    for label, value in active:
        if abs(value) <= threshold:
            raise ResonanceError(label, value, threshold)

    pref = cavity_prefactor(spec, cavity)
    n = cavity.photon_number
    emit_plus = pref * (n + 1) * lp * lp / den["omega+eps0*Lambda_plus"]
    emit_minus = pref * (n + 1) * lm * lm / den["omega-eps0*Lambda_minus"]
    terms = [("emission_plus", emit_plus), ("emission_minus", emit_minus)]
    if n:
        terms.append(("absorption_plus", -pref * n * lp * lp / den["omega-eps0*Lambda_plus"]))
        terms.append(("absorption_minus", -pref * n * lm * lm / den["omega+eps0*Lambda_minus"]))
    return ShiftResult.from_terms(
        terms, characteristic_chi(spec), None,
        m=m, flux=spec.flux, photon_number=n, omega=cavity.omega,
    )


def vacuum_cavity_shift(
    spec: Ring1DSpec,
    cavity: CavityModeSpec,
    m: int,
    resonance_tolerance: float = DEFAULT_RESONANCE_TOLERANCE,
) -> ShiftResult:
    """Empty-cavity (N = 0) part of :func:`cavity_shift`."""
    if cavity.photon_number:
        cavity = CavityModeSpec(cavity.omega, cavity.amplitude, 0)
    return cavity_shift(spec, cavity, m, resonance_tolerance)
