"""Aharonov-Bohm ring of zero width: levels, dipole velocities and Lamb shift.

Levels are eps0 (m + f)^2. Only the combination q = m + f enters any
result, so every function here is invariant under (m, f) -> (m + 1, f - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .table import Column, ScanTable
from .units import (
    CutoffWindow,
    Ring1DSpec,
    WindowReport,
    check_cutoff_window,
    characteristic_chi,
    epsilon0,
)

__all__ = [
    "AngularLevel",
    "LambdaPair",
    "ShiftResult",
    "VelocityElement",
    "LAMBDA_ZERO_TOL",
    "spectrum_1d",
    "lambda_pair",
    "matrix_element_1d",
    "lamb_shift_1d",
    "lamb_shift_1d_rewritten",
    "lamb_shift_1d_printed_sign",
    "minimal_shift_1d",
    "flux_scan",
    "cube_log",
]

# |Lambda| below this is treated as an exact zero (x^3 ln|x| -> 0)
LAMBDA_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class AngularLevel:
    m: int
    energy: float


@dataclass(frozen=True)
class LambdaPair:
    """Transition coefficients Lambda_+- = 2(m + f) +- 1."""

    lambda_plus: float
    lambda_minus: float


def lambda_pair(q: float) -> LambdaPair:
    return LambdaPair(2.0 * q + 1.0, 2.0 * q - 1.0)


@dataclass(frozen=True)
class ShiftResult:
    """A level shift in eV with its additive decomposition.

    ``total`` is the left-to-right sum of the ``per_term`` energies.
    """

    total: float
    per_term: tuple[tuple[str, float], ...]
    in_chi_units: float
    window_report: WindowReport | None = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_terms(cls, terms, chi, window_report=None, **meta) -> "ShiftResult":
        terms = tuple((label, float(value)) for label, value in terms)
        total = 0.0
        for _, value in terms:
            total += value
        return cls(total, terms, total / chi, window_report, meta)

    def term(self, label: str) -> float:
        return dict(self.per_term)[label]


def spectrum_1d(spec: Ring1DSpec, m: int) -> AngularLevel:
    q = m + spec.flux
    return AngularLevel(m, epsilon0(spec) * q * q)


@dataclass(frozen=True)
class VelocityElement:
    """|<n|(e_+- . v)|m>| in units of c, with n = m +- 1."""

    magnitude: float
    initial_m: int
    final_m: int
    polarization_sign: int


def matrix_element_1d(spec: Ring1DSpec, m: int, polarization_sign: int) -> VelocityElement:
    """Dipole velocity element between ring states m and m +- 1.

    The magnitude is hbar |1 +- 2(m + f)| / (2 m* R) expressed in units of c.
    """
    if polarization_sign not in (1, -1):
        raise ValueError("polarization_sign must be +1 or -1")
    q = m + spec.flux
    unit = spec.constants.hbar_c / (2.0 * spec.rest_energy * spec.radius)
    return VelocityElement(
        unit * abs(1.0 + polarization_sign * 2.0 * q), m, m + polarization_sign,
        polarization_sign,
    )


def cube_log(x: float, log_scale: float) -> float:
    """x^3 ln(k_max / (eps0 |x|)) given ``log_scale`` = ln(k_max / eps0).

    Returns the x -> 0 limit (zero) when |x| < LAMBDA_ZERO_TOL.
    """
    if abs(x) < LAMBDA_ZERO_TOL:
        return 0.0
    return x**3 * (log_scale - math.log(abs(x)))


def _prefactor(spec: Ring1DSpec) -> float:
    # alpha eps0^2 / (2 pi m* c^2)
    return characteristic_chi(spec) / (2.0 * math.pi)


def _check_kmax(k_max: float) -> None:
    if not (k_max > 0 and math.isfinite(k_max)):
        raise ValueError(f"k_max must be positive and finite, got {k_max!r}")


def _window(spec: Ring1DSpec, k_max: float) -> WindowReport:
    return check_cutoff_window(
        CutoffWindow(k_max, epsilon0(spec), rest_energy=spec.rest_energy)
    )


def lamb_shift_1d(spec: Ring1DSpec, m: int, k_max: float) -> ShiftResult:
    """Low-momentum Lamb shift of ring level ``m`` with photon cut-off ``k_max`` (eV).

    The two terms are the virtual transitions to m - 1 (coefficient 1 - 2q)
    and to m + 1 (coefficient 1 + 2q). No validity gating is applied; the
    cut-off window report travels with the result.
    """
    _check_kmax(k_max)
    eps0 = epsilon0(spec)
    q = m + spec.flux
    pref = _prefactor(spec)
    log_scale = math.log(k_max / eps0)
    terms = [
        ("to_m_minus_1", pref * cube_log(1.0 - 2.0 * q, log_scale)),
        ("to_m_plus_1", pref * cube_log(1.0 + 2.0 * q, log_scale)),
    ]
    return ShiftResult.from_terms(
        terms, characteristic_chi(spec), _window(spec, k_max), m=m, flux=spec.flux
    )


def minimal_shift_1d(spec: Ring1DSpec, k_max: float) -> float:
    """Shift at m + f = 0: alpha eps0^2 ln(k_max / eps0) / (pi m* c^2)."""
    _check_kmax(k_max)
    eps0 = epsilon0(spec)
    return characteristic_chi(spec) / math.pi * math.log(k_max / eps0)


def _xlogx3(x: float) -> float:
    if abs(x) < LAMBDA_ZERO_TOL:
        return 0.0
    return x**3 * math.log(abs(x))


def lamb_shift_1d_rewritten(spec: Ring1DSpec, m: int, k_max: float) -> ShiftResult:
    """Same shift written as (1 + 12 q^2) times the minimal shift plus a log remainder.

    The remainder is -P [ -Lambda_-^3 ln|Lambda_-| + Lambda_+^3 ln|Lambda_+| ]
    with P = alpha eps0^2 / (2 pi m* c^2). The minus sign on the Lambda_-
    term is what makes this identical to :func:`lamb_shift_1d`; the variant
    with both signs positive is :func:`lamb_shift_1d_printed_sign`.
    """
    return _rewritten(spec, m, k_max, lambda_minus_sign=-1.0)


def lamb_shift_1d_printed_sign(spec: Ring1DSpec, m: int, k_max: float) -> ShiftResult:
    """Rewritten form with +Lambda_-^3 ln|Lambda_-|.

    Kept only to document the discrepancy: it agrees with
    :func:`lamb_shift_1d` when Lambda_- is 0 or +-1 and differs by
    2 P Lambda_-^3 ln|Lambda_-| otherwise.
    """
    return _rewritten(spec, m, k_max, lambda_minus_sign=1.0)


def _rewritten(spec, m, k_max, lambda_minus_sign):
    _check_kmax(k_max)
    q = m + spec.flux
    lam = lambda_pair(q)
    pref = _prefactor(spec)
    terms = [
        ("minimal_scaled", (1.0 + 12.0 * q * q) * minimal_shift_1d(spec, k_max)),
        ("log_lambda_minus", -pref * lambda_minus_sign * _xlogx3(lam.lambda_minus)),
        ("log_lambda_plus", -pref * _xlogx3(lam.lambda_plus)),
    ]
    return ShiftResult.from_terms(
        terms, characteristic_chi(spec), _window(spec, k_max), m=m, flux=spec.flux
    )


def flux_scan(
    spec: Ring1DSpec,
    m_values: Sequence[int],
    f_grid: Sequence[float],
    k_max: float,
) -> ScanTable:
    """Tabulate the shift of each level in ``m_values`` over the flux grid.

    ``spec.flux`` is ignored; rows are ordered m-major, f-minor.
    """
    f_grid = [float(f) for f in np.asarray(f_grid, dtype=float).ravel()]
    if not f_grid:
        raise ValueError("f_grid must not be empty")
    if len(m_values) == 0:
        raise ValueError("m_values must not be empty")
    _check_kmax(k_max)
    chi = characteristic_chi(spec)
    table = ScanTable(
        [Column("m", "1"), Column("f", "1"), Column("shift", "eV"),
         Column("shift_over_chi", "chi")],
        meta={"radius_nm": spec.radius, "mass_ratio": spec.mass_ratio,
              "k_max_eV": k_max, "chi_eV": chi, "epsilon0_eV": epsilon0(spec)},
    )
    eps0 = epsilon0(spec)
    pref = _prefactor(spec)
    log_scale = math.log(k_max / eps0)
    for m in m_values:
        m = int(m)
        for f in f_grid:
            q = m + f
            total = pref * cube_log(1.0 - 2.0 * q, log_scale)
            total += pref * cube_log(1.0 + 2.0 * q, log_scale)
            table.append((m, f, total, total / chi))
    return table
