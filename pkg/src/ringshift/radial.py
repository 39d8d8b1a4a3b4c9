"""Radial bound states of a 2D ring with an arbitrary confining potential V(rho).

The radial equation

    -hbar^2/(2m) [R'' + R'/rho - m^2 R / rho^2] + V R = eps R

is symmetrized with u = sqrt(rho) R, which turns it into

    -hbar^2/(2m) [u'' - (m^2 - 1/4) u / rho^2] + V u = eps u,

discretized with three-point differences on a uniform grid with u = 0 at
both ends. The resulting real symmetric tridiagonal matrix is diagonalized
with LAPACK's ``stebz``/``stein`` pair through
:func:`scipy.linalg.eigh_tridiagonal`.

Radial quantum numbers are 0-based: ``n = 0`` is the lowest state of each
azimuthal channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from scipy.integrate import trapezoid

from .units import CODATA, PhysicalConstants

__all__ = [
    "RadialPotential",
    "DisplacedParabola",
    "TabulatedPotential",
    "ConstantPotential",
    "RadialGrid",
    "RadialEigenpair",
    "HarmonicReference",
    "NumericalError",
    "radial_hamiltonian",
    "solve_radial",
    "default_grid",
    "mean_radius",
    "transition_radial_element",
    "overlap",
    "harmonic_reference",
]


class NumericalError(RuntimeError):
    """The eigensolver failed or returned an unusable spectrum."""


class RadialPotential:
    """Base class for confining potentials V(rho) in eV, rho in nm."""

    def __call__(self, rho):
        raise NotImplementedError

    def laplacian(self, rho):
        """Radial Laplacian V'' + V'/rho in eV/nm^2."""
        raise NotImplementedError


@dataclass(frozen=True)
class DisplacedParabola(RadialPotential):
    """V(rho) = (v0/2) (rho - radius)^2 with ``v0`` in eV/nm^2."""

    v0: float
    radius: float

    def __post_init__(self):
        if not self.v0 > 0:
            raise ValueError(f"v0 must be positive, got {self.v0!r}")
        if not self.radius >= 0:
            raise ValueError(f"radius must be non-negative, got {self.radius!r}")

    @classmethod
    def from_width(cls, width, radius, mass_ratio=1.0, constants=CODATA):
        """Parabola whose harmonic ground state has oscillator length ``width``."""
        kin = constants.kinetic_scale(mass_ratio)
        return cls(2.0 * kin / width**4, radius)

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        return 0.5 * self.v0 * (rho - self.radius) ** 2

    def laplacian(self, rho):
        rho = np.asarray(rho, dtype=float)
        return self.v0 * (2.0 - self.radius / rho)

    def width(self, mass_ratio=1.0, constants=CODATA) -> float:
        return harmonic_reference(self.v0, self.radius, mass_ratio, constants).width


@dataclass(frozen=True)
class ConstantPotential(RadialPotential):
    value: float = 0.0

    def __call__(self, rho):
        return np.full_like(np.asarray(rho, dtype=float), self.value)

    def laplacian(self, rho):
        return np.zeros_like(np.asarray(rho, dtype=float))


@dataclass(frozen=True, eq=False)
class TabulatedPotential(RadialPotential):
    """Potential sampled at strictly increasing radii, linearly interpolated.

    Evaluating outside ``[rho[0], rho[-1]]`` raises; there is no
    extrapolation. The Laplacian uses second-order finite differences on the
    table itself, interpolated the same way.
    """

    rho: np.ndarray
    values: np.ndarray
    _d1: np.ndarray = field(init=False, repr=False)
    _d2: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if rho.ndim != 1 or rho.shape != values.shape:
            raise ValueError("rho and values must be 1D arrays of equal length")
        if rho.size < 3:
            raise ValueError("need at least 3 samples")
        if np.any(np.diff(rho) <= 0):
            raise ValueError("rho samples must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("potential samples must be finite")
        d1 = np.gradient(values, rho, edge_order=2)
        d2 = np.gradient(d1, rho, edge_order=2)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_d1", d1)
        object.__setattr__(self, "_d2", d2)

    @classmethod
    def from_samples(cls, samples):
        arr = np.asarray(samples, dtype=float)
        return cls(arr[:, 0], arr[:, 1])

    def _check_range(self, rho):
        # tolerate round-off at the table ends
        slack = 1e-12 * max(abs(self.rho[0]), abs(self.rho[-1]), 1.0)
        if np.any(rho < self.rho[0] - slack) or np.any(rho > self.rho[-1] + slack):
            raise ValueError(
                f"rho outside tabulated range [{self.rho[0]}, {self.rho[-1]}] nm"
            )

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        self._check_range(rho)
        return np.interp(rho, self.rho, self.values)

    def laplacian(self, rho):
        rho = np.asarray(rho, dtype=float)
        self._check_range(rho)
        return np.interp(rho, self.rho, self._d2) + np.interp(rho, self.rho, self._d1) / rho


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [rho_min, rho_max] including both (Dirichlet) end points."""

    rho_min: float
    rho_max: float
    n_points: int

    def __post_init__(self):
        if not self.rho_min > 0:
            raise ValueError("rho_min must be positive")
        if not self.rho_min < self.rho_max:
            raise ValueError("rho_min must be smaller than rho_max")
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise ValueError("n_points must be an integer >= 16")

    @property
    def h(self) -> float:
        return (self.rho_max - self.rho_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.rho_min, self.rho_max, self.n_points)


def default_grid(potential: RadialPotential, n_points: int = 2000,
                 mass_ratio: float = 1.0, constants: PhysicalConstants = CODATA,
                 n_widths: float = 8.0) -> RadialGrid:
    """Grid spanning ``n_widths`` oscillator lengths on each side of a parabolic ring."""
    if isinstance(potential, DisplacedParabola):
        d = potential.width(mass_ratio, constants)
        r = potential.radius
        return RadialGrid(max(r - n_widths * d, 0.05 * r), r + n_widths * d, n_points)
    if isinstance(potential, TabulatedPotential):
        lo = potential.rho[0] if potential.rho[0] > 0 else potential.rho[1]
        return RadialGrid(lo, potential.rho[-1], n_points)
    raise ValueError(f"no default grid for {type(potential).__name__}; pass a RadialGrid")


@dataclass(frozen=True, eq=False)
class RadialEigenpair:
    """Radial state R_{n,m} sampled on ``grid``, normalized to int R^2 rho drho = 1."""

    n: int
    m: int
    energy: float
    grid: RadialGrid
    values: np.ndarray

    @property
    def rho(self) -> np.ndarray:
        return self.grid.points

    @property
    def label(self) -> str:
        # 1-based radial numbering used in the physics literature
        return f"n={self.n} (n'={self.n + 1}), m={self.m}"

    def norm(self) -> float:
        return float(trapezoid(self.values**2 * self.rho, self.rho))


def radial_hamiltonian(potential: RadialPotential, grid: RadialGrid, m: int,
                       mass_ratio: float = 1.0,
                       constants: PhysicalConstants = CODATA):
    """Diagonal and off-diagonal of the symmetric tridiagonal Hamiltonian (eV).

    Only the ``n_points - 2`` interior points are unknowns.
    """
    kin = constants.kinetic_scale(mass_ratio)
    rho = grid.points[1:-1]
    h2 = grid.h**2
    diag = 2.0 * kin / h2 + kin * (m * m - 0.25) / rho**2 + potential(rho)
    off = np.full(rho.size - 1, -kin / h2)
    return diag, off


def solve_radial(potential: RadialPotential, grid: RadialGrid, m: int,
                 n_states: int, mass_ratio: float = 1.0,
                 constants: PhysicalConstants = CODATA) -> list[RadialEigenpair]:
    """Lowest ``n_states`` radial eigenpairs of azimuthal channel ``m``."""
    if n_states < 1:
        raise ValueError("n_states must be at least 1")
    if n_states > grid.n_points // 4:
        raise ValueError(
            f"grid of {grid.n_points} points is too coarse for {n_states} states "
            f"(need n_points >= {4 * n_states})"
        )
    diag, off = radial_hamiltonian(potential, grid, m, mass_ratio, constants)
    if not (np.all(np.isfinite(diag))):
        raise NumericalError("non-finite Hamiltonian diagonal; check the potential")
    try:
        energies, vectors = linalg.eigh_tridiagonal(
            diag, off, select="i", select_range=(0, n_states - 1)
        )
    except linalg.LinAlgError as exc:
        raise NumericalError(
            f"tridiagonal eigensolve failed for m={m}, {grid.n_points} points: {exc}"
        ) from exc
    if energies.size != n_states or np.any(np.diff(energies) <= 0):
        raise NumericalError(
            f"expected {n_states} distinct eigenvalues, got {energies!r}"
        )

    rho = grid.points
    pairs = []
    for n in range(n_states):
        u = np.zeros(grid.n_points)
        u[1:-1] = vectors[:, n]
        u /= math.sqrt(trapezoid(u * u, rho))
        values = u / np.sqrt(rho)
        if values[np.argmax(np.abs(values))] < 0:
            values = -values
        pairs.append(RadialEigenpair(n, m, float(energies[n]), grid, values))
    return pairs


def _same_grid(a: RadialEigenpair, b: RadialEigenpair) -> None:
    if a.grid != b.grid:
        raise ValueError(f"eigenpairs live on different grids: {a.grid} vs {b.grid}")


def mean_radius(pair: RadialEigenpair) -> float:
    """<R|rho|R> = int R^2 rho^2 drho (nm)."""
    rho = pair.rho
    return float(trapezoid(pair.values**2 * rho**2, rho))


def transition_radial_element(a: RadialEigenpair, b: RadialEigenpair) -> float:
    """int R_a R_b rho^2 drho (nm)."""
    _same_grid(a, b)
    rho = a.rho
    return float(trapezoid(a.values * b.values * rho**2, rho))


def overlap(a: RadialEigenpair, b: RadialEigenpair) -> float:
    """int R_a R_b rho drho; the identity for states of one channel."""
    _same_grid(a, b)
    rho = a.rho
    return float(trapezoid(a.values * b.values * rho, rho))


@dataclass(frozen=True)
class HarmonicReference:
    """Harmonic approximation to the lowest state of a narrow parabolic ring."""

    epsilon_radial: float
    width: float
    radius: float

    def gaussian(self, rho):
        """Ground state (R d sqrt(pi))^(-1/2) exp(-(rho - R)^2 / 2 d^2)."""
        rho = np.asarray(rho, dtype=float)
        d, r = self.width, self.radius
        amp = 1.0 / math.sqrt(r * d * math.sqrt(math.pi))
        return amp * np.exp(-((rho - r) ** 2) / (2.0 * d * d))


def harmonic_reference(v0: float, radius: float, mass_ratio: float = 1.0,
                       constants: PhysicalConstants = CODATA) -> HarmonicReference:
    """Zero-point energy (hbar/2) sqrt(v0/m*) and oscillator length d.

    ``d`` satisfies hbar^2 / (2 m* d^2) = epsilon_radial.
    """
    if not v0 > 0:
        raise ValueError(f"v0 must be positive, got {v0!r}")
    eps = 0.5 * math.sqrt(v0 * constants.hbar_c**2 / constants.rest_energy(mass_ratio))
    d = math.sqrt(constants.kinetic_scale(mass_ratio) / eps)
    return HarmonicReference(eps, d, radius)
