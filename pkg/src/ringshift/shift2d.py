"""Lamb shift of 2D ring levels assembled from radial eigenpairs.

Virtual transitions from (n, m) go to (n', m +- 1). Those with n' = n form
the *diagonal* part, evaluated in the narrow-ring form with the azimuthal
energy scale built from the mean radius. Those with n' != n form the
*non-diagonal* part, summed over the solved radial basis with one pooled
logarithm ln(k_max / eps_bar).

Energies are in eV, lengths in nm. Squared dipole lengths are converted to
energies with (hbar c)^2, masses enter as rest energies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special
from scipy.integrate import trapezoid

from .radial import (
    DisplacedParabola,
    RadialEigenpair,
    RadialGrid,
    RadialPotential,
    mean_radius,
    solve_radial,
    transition_radial_element,
)
from .ring1d import cube_log, lambda_pair
from .units import CODATA, PhysicalConstants, Ring1DSpec, epsilon0

__all__ = [
    "BasisTruncation",
    "Transition",
    "Shift2DResult",
    "SumRuleResult",
    "SUM_RULE_CONSTANT",
    "solve_channels",
    "diagonal_shift_2d",
    "nondiagonal_shift_2d",
    "total_shift_2d",
    "sum_rule_check",
    "calibrate_sum_rule_constant",
    "laplacian_expectation",
    "bethe_log_shift",
    "parabolic_prefactor",
    "parabolic_lowest_shift",
    "narrow_parabola",
]

# Fixed by calibrate_sum_rule_constant() on the isotropic 2D oscillator.
SUM_RULE_CONSTANT = 1.0


@dataclass(frozen=True)
class BasisTruncation:
    """Radial states n' = 0 .. n_max enter the virtual-state sums.

    ``effective_energy`` fixes eps_bar; ``None`` selects the weighted
    geometric mean of the transition energies with weights |dE|^3 |R|^2.
    """

    n_max: int
    effective_energy: float | None = None

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError("n_max must be a non-negative integer")
        if self.effective_energy is not None and not self.effective_energy > 0:
            raise ValueError("effective_energy must be positive")


@dataclass(frozen=True)
class Transition:
    n: int
    m: int
    delta_e: float
    matrix_element: float
    contribution: float
    unpooled_contribution: float


@dataclass(frozen=True)
class Shift2DResult:
    diagonal: float
    nondiagonal: float
    total: float
    effective_energy_used: float
    transitions: tuple[Transition, ...] = ()
    nondiagonal_unpooled: float = 0.0
    meta: dict = field(default_factory=dict)


Channels = dict  # m -> list[RadialEigenpair], index = radial quantum number


def solve_channels(potential: RadialPotential, grid: RadialGrid, m: int, n_max: int,
                   mass_ratio: float = 1.0,
                   constants: PhysicalConstants = CODATA) -> Channels:
    """Eigenpairs n = 0..n_max for channels m - 1, m and m + 1."""
    return {
        mm: solve_radial(potential, grid, mm, n_max + 1, mass_ratio, constants)
        for mm in (m - 1, m, m + 1)
    }


def _check_kmax(k_max):
    if not (k_max > 0 and math.isfinite(k_max)):
        raise ValueError(f"k_max must be positive and finite, got {k_max!r}")


def diagonal_shift_2d(pair: RadialEigenpair, k_max: float, flux: float = 0.0,
                      mass_ratio: float = 1.0,
                      constants: PhysicalConstants = CODATA) -> float:
    """Shift from n' = n transitions of a narrow ring, in eV.

    The transition energies are eps0 Lambda_+ (to m + 1) and -eps0 Lambda_-
    (to m - 1), with eps0 = hbar^2 / (2 m* Rbar^2) and Rbar the mean radius
    of ``pair``; the squared dipole length is Rbar^2.
    """
    _check_kmax(k_max)
    rbar = mean_radius(pair)
    spec = Ring1DSpec(rbar, flux, mass_ratio, constants)
    eps0 = epsilon0(spec)
    lam = lambda_pair(pair.m + flux)
    log_scale = math.log(k_max / eps0)
    bracket = cube_log(lam.lambda_plus, log_scale) + cube_log(-lam.lambda_minus, log_scale)
    return constants.alpha / math.pi * eps0**3 * rbar**2 / constants.hbar_c**2 * bracket


def _target(channels: Channels, target) -> RadialEigenpair:
    n, m = target
    for mm in (m - 1, m, m + 1):
        if mm not in channels:
            raise ValueError(f"channel m={mm} missing from eigenpairs")
    if n >= len(channels[m]):
        raise ValueError(f"target n={n} not solved in channel m={m}")
    return channels[m][n]


def _transitions(channels, target, n_max, include_diagonal):
    n, m = target
    initial = _target(channels, target)
    out = []
    for mm in (m + 1, m - 1):
        states = channels[mm]
        if len(states) <= n_max:
            raise ValueError(
                f"channel m={mm} has {len(states)} states, truncation needs {n_max + 1}"
            )
        for state in states[: n_max + 1]:
            if state.n == n and not include_diagonal:
                continue
            out.append((state, state.energy - initial.energy,
                        transition_radial_element(state, initial)))
    return out


def nondiagonal_shift_2d(channels: Channels, target: tuple[int, int], k_max: float,
                         trunc: BasisTruncation,
                         constants: PhysicalConstants = CODATA):
    """Sum over n' != n with a single pooled logarithm.

    Returns ``(value, eps_bar, transitions, unpooled_value)``. ``eps_bar`` is
    NaN when every transition weight vanishes (the value is then 0).
    """
    _check_kmax(k_max)
    items = _transitions(channels, target, trunc.n_max, include_diagonal=False)
    scale = constants.alpha / math.pi / constants.hbar_c**2
    strengths = [de**3 * rel**2 for _, de, rel in items]
    weights = [abs(s) for s in strengths]
    wsum = math.fsum(weights)

    if trunc.effective_energy is not None:
        eps_bar = trunc.effective_energy
    elif wsum > 0:
        eps_bar = math.exp(
            math.fsum(w * math.log(abs(de)) for w, (_, de, _) in zip(weights, items) if w > 0)
            / wsum
        )
    else:
        eps_bar = float("nan")

    if not items or wsum == 0:
        return 0.0, eps_bar, (), 0.0

    pooled_log = math.log(k_max / eps_bar)
    transitions = []
    for (state, de, rel), s in zip(items, strengths):
        transitions.append(Transition(
            state.n, state.m, de, rel,
            scale * s * pooled_log,
            scale * s * math.log(k_max / abs(de)) if de else 0.0,
        ))
    value = math.fsum(t.contribution for t in transitions)
    unpooled = math.fsum(t.unpooled_contribution for t in transitions)
    return value, eps_bar, tuple(transitions), unpooled


def total_shift_2d(channels: Channels, target: tuple[int, int], k_max: float,
                   trunc: BasisTruncation, flux: float = 0.0, mass_ratio: float = 1.0,
                   constants: PhysicalConstants = CODATA) -> Shift2DResult:
    """Diagonal plus non-diagonal shift of level ``target = (n, m)``."""
    pair = _target(channels, target)
    diag = diagonal_shift_2d(pair, k_max, flux, mass_ratio, constants)
    nondiag, eps_bar, transitions, unpooled = nondiagonal_shift_2d(
        channels, target, k_max, trunc, constants
    )
    return Shift2DResult(
        diag, nondiag, diag + nondiag, eps_bar, transitions, unpooled,
        meta={"n": target[0], "m": target[1], "k_max_eV": k_max,
              "n_max": trunc.n_max, "mean_radius_nm": mean_radius(pair)},
    )


def laplacian_expectation(pair: RadialEigenpair, potential: RadialPotential) -> float:
    """int R^2 (V'' + V'/rho) rho drho in eV/nm^2."""
    rho = pair.rho
    return float(trapezoid(pair.values**2 * potential.laplacian(rho) * rho, rho))


@dataclass(frozen=True)
class SumRuleResult:
    lhs: float
    rhs: float
    ratio: float


def sum_rule_check(channels: Channels, target: tuple[int, int],
                   potential: RadialPotential, mass_ratio: float = 1.0,
                   constants: PhysicalConstants = CODATA,
                   n_max: int | None = None) -> SumRuleResult:
    """Compare sum_N' dE |<N'|e.v|N>|^2 dE with C (hbar/m*)^2 <lap V>.

    Both sides are in eV. Every solved state of the m +- 1 channels enters
    the left side unless ``n_max`` limits it; an incomplete basis shows up as
    a ratio away from 1.
    """
    if n_max is None:
        n_max = min(len(channels[target[1] + 1]), len(channels[target[1] - 1])) - 1
    items = _transitions(channels, target, n_max, include_diagonal=True)
    lhs = math.fsum(de**3 * rel**2 for _, de, rel in items) / constants.hbar_c**2
    pair = _target(channels, target)
    rest = constants.rest_energy(mass_ratio)
    rhs = (SUM_RULE_CONSTANT * constants.hbar_c**2 / rest**2
           * laplacian_expectation(pair, potential))
    ratio = lhs / rhs if rhs != 0 else float("nan")
    return SumRuleResult(lhs, rhs, ratio)


def _oscillator_state(n, m, length):
    am = abs(m)

    def radial(rho):
        x = (rho / length) ** 2
        return (rho / length) ** am * special.eval_genlaguerre(n, am, x) * np.exp(-x / 2)

    return radial


def calibrate_sum_rule_constant(n: int = 0, m: int = 0, length: float = 1.0,
                                mass_ratio: float = 1.0,
                                constants: PhysicalConstants = CODATA,
                                n_quad: int = 20001) -> float:
    """Value of C making the sum rule exact for the isotropic 2D oscillator.

    Uses the analytic levels hbar w (2n + |m| + 1) and Laguerre radial
    functions of oscillator length ``length``; dipole transitions from (n, m)
    reach only n' in {n - 1, n, n + 1} of the m +- 1 channels, so the sum is
    complete.
    """
    kin = constants.kinetic_scale(mass_ratio)
    hw = 2.0 * kin / length**2
    rest = constants.rest_energy(mass_ratio)
    lap = 2.0 * hw**2 * rest / constants.hbar_c**2  # 2 m w^2

    rho = np.linspace(0.0, 14.0 * length * math.sqrt(n + abs(m) + 2), n_quad)

    def normalized(nn, mm):
        r = _oscillator_state(nn, mm, length)(rho)
        return r / math.sqrt(trapezoid(r * r * rho, rho))

    initial = normalized(n, m)
    e0 = hw * (2 * n + abs(m) + 1)
    lhs = 0.0
    for mm in (m + 1, m - 1):
        for nn in range(max(n - 1, 0), n + 2):
            de = hw * (2 * nn + abs(mm) + 1) - e0
            rel = trapezoid(normalized(nn, mm) * initial * rho**2, rho)
            lhs += de**3 * rel**2
    lhs /= constants.hbar_c**2
    return lhs / (constants.hbar_c**2 / rest**2 * lap)


def _log_factor(k_max, epsilon_bar, log_factor):
    if log_factor is not None:
        if k_max is not None or epsilon_bar is not None:
            raise ValueError("pass either log_factor or (k_max, epsilon_bar), not both")
        return float(log_factor)
    if k_max is None or epsilon_bar is None:
        raise ValueError("k_max and epsilon_bar are required without log_factor")
    if not (k_max > 0 and epsilon_bar > 0):
        raise ValueError("k_max and epsilon_bar must be positive")
    if k_max <= epsilon_bar:
        warnings.warn(
            f"k_max={k_max} eV <= eps_bar={epsilon_bar} eV: logarithm is not positive",
            RuntimeWarning, stacklevel=3,
        )
    return math.log(k_max / epsilon_bar)


def bethe_log_shift(pair: RadialEigenpair, potential: RadialPotential,
                    k_max: float | None = None, epsilon_bar: float | None = None,
                    mass_ratio: float = 1.0, constants: PhysicalConstants = CODATA,
                    *, log_factor: float | None = None) -> float:
    """Effective-logarithm shift alpha (hbar c)^2 ln(k_max/eps_bar) <lap V> / (pi (m c^2)^2).

    The azimuthal factor of the full wavefunction integrates to 1, so only
    the radial expectation of the Laplacian remains.
    """
    log = _log_factor(k_max, epsilon_bar, log_factor)
    rest = constants.rest_energy(mass_ratio)
    return (constants.alpha / (math.pi * rest**2) * constants.hbar_c**2 * log
            * laplacian_expectation(pair, potential))


def parabolic_prefactor(v0: float, mass_ratio: float = 1.0,
                        constants: PhysicalConstants = CODATA) -> float:
    """2 alpha v0 (hbar c)^2 / (pi (m c^2)^2) in eV."""
    if v0 < 0:
        raise ValueError("v0 must be non-negative")
    rest = constants.rest_energy(mass_ratio)
    return 2.0 * constants.alpha * v0 * constants.hbar_c**2 / (math.pi * rest**2)


def parabolic_lowest_shift(v0: float, k_max: float | None = None,
                           epsilon_bar: float | None = None, mass_ratio: float = 1.0,
                           constants: PhysicalConstants = CODATA,
                           *, log_factor: float | None = None) -> float:
    """Closed-form lowest-level shift for a displaced parabola of stiffness ``v0``.

    Carries an overall factor 2 relative to the narrow-ring limit of
    :func:`bethe_log_shift`, where <lap V> -> v0.
    """
    log = _log_factor(k_max, epsilon_bar, log_factor)
    return parabolic_prefactor(v0, mass_ratio, constants) * log


def narrow_parabola(width_ratio: float, radius: float, mass_ratio: float = 1.0,
                    constants: PhysicalConstants = CODATA) -> DisplacedParabola:
    """Displaced parabola of radius ``radius`` with oscillator length width_ratio*radius."""
    return DisplacedParabola.from_width(width_ratio * radius, radius, mass_ratio, constants)
