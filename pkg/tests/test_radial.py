import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from ringshift.radial import (
    DisplacedParabola,
    RadialGrid,
    TabulatedPotential,
    default_grid,
    harmonic_reference,
    mean_radius,
    overlap,
    radial_hamiltonian,
    solve_radial,
    transition_radial_element,
)
from ringshift.units import CODATA

R = 20.0


def narrow(ratio=0.02, radius=R):
    return DisplacedParabola.from_width(ratio * radius, radius)


@pytest.fixture(scope="module")
def narrow_states():
    pot = narrow()
    grid = default_grid(pot, 2000)
    return pot, grid, solve_radial(pot, grid, 0, 5)


def test_harmonic_reference_gaas():
    ref = harmonic_reference(1.68, R)
    expected = 0.5 * math.sqrt(1.68 * CODATA.hbar_c**2 / CODATA.electron_rest_energy)
    assert ref.epsilon_radial == pytest.approx(expected, rel=1e-15)
    assert ref.epsilon_radial == pytest.approx(0.179, abs=5e-4)
    kin = CODATA.hbar_c**2 / (2 * CODATA.electron_rest_energy)
    assert kin / ref.width**2 == pytest.approx(ref.epsilon_radial, rel=1e-14)


def test_from_width_roundtrip():
    pot = DisplacedParabola.from_width(0.4, 20.0)
    assert pot.width() == pytest.approx(0.4, rel=1e-14)


def test_gaussian_normalized():
    ref = harmonic_reference(1.68, R)
    d = ref.width
    rho = np.linspace(R - 12 * d, R + 12 * d, 20001)
    g = ref.gaussian(rho)
    assert trapezoid(g * g * rho, rho) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_moment_closed_form():
    # int R0^2 rho^2 drho = R + d^2 / (2 R) for the full-line Gaussian
    ref = harmonic_reference(1.68, R)
    d = ref.width
    rho = np.linspace(R - 12 * d, R + 12 * d, 20001)
    g = ref.gaussian(rho)
    assert trapezoid(g * g * rho**2, rho) == pytest.approx(R + d * d / (2 * R), rel=1e-8)


def test_ground_state_matches_harmonic_limit(narrow_states):
    pot, grid, states = narrow_states
    ref = harmonic_reference(pot.v0, R)
    assert states[0].energy == pytest.approx(ref.epsilon_radial, rel=0.01)
    gauss = ref.gaussian(grid.points)
    peak = np.max(np.abs(states[0].values))
    assert np.max(np.abs(states[0].values - gauss)) < 0.01 * peak


def test_mean_radius(narrow_states):
    _, _, states = narrow_states
    assert mean_radius(states[0]) == pytest.approx(R, rel=0.005)


def test_normalization_and_sign(narrow_states):
    _, _, states = narrow_states
    for s in states:
        assert s.norm() == pytest.approx(1.0, abs=1e-8)
        assert s.values[np.argmax(np.abs(s.values))] > 0
    energies = [s.energy for s in states]
    assert all(a < b for a, b in zip(energies, energies[1:]))


def test_orthonormal_gram(narrow_states):
    _, _, states = narrow_states
    gram = np.array([[overlap(a, b) for b in states] for a in states])
    assert np.max(np.abs(gram - np.eye(len(states)))) < 1e-7


def test_transition_elements(narrow_states):
    _, _, states = narrow_states
    assert transition_radial_element(states[0], states[0]) == mean_radius(states[0])
    assert abs(transition_radial_element(states[0], states[1])) < 0.05 * R


def test_grid_mismatch():
    pot = narrow()
    a = solve_radial(pot, default_grid(pot, 400), 0, 2)
    b = solve_radial(pot, default_grid(pot, 401), 0, 2)
    with pytest.raises(ValueError, match="different grids"):
        transition_radial_element(a[0], b[0])


def _dense_oracle(pot, grid, m):
    kin = CODATA.hbar_c**2 / (2 * CODATA.electron_rest_energy)
    rho = grid.points[1:-1]
    h = grid.h
    n = rho.size
    lap = (np.diag(np.full(n, -2.0)) + np.diag(np.ones(n - 1), 1)
           + np.diag(np.ones(n - 1), -1)) / h**2
    H = -kin * lap + np.diag(kin * (m**2 - 0.25) / rho**2 + 0.5 * pot.v0 * (rho - pot.radius) ** 2)
    return np.linalg.eigvalsh(H)


@pytest.mark.parametrize("m", [0, 1, 3])
def test_dense_oracle_small_grid(m):
    pot = narrow(0.1)
    grid = RadialGrid(R - 6 * 2.0, R + 6 * 2.0, 50)
    states = solve_radial(pot, grid, m, 5)
    oracle = _dense_oracle(pot, grid, m)[:5]
    np.testing.assert_allclose([s.energy for s in states], oracle, rtol=1e-10)


def test_hamiltonian_is_tridiagonal_symmetric():
    pot = narrow()
    grid = default_grid(pot, 100)
    diag, off = radial_hamiltonian(pot, grid, 2)
    assert diag.shape == (98,) and off.shape == (97,)


def test_grid_convergence():
    pot = narrow(0.05)
    coarse = solve_radial(pot, default_grid(pot, 500), 0, 4)
    fine = solve_radial(pot, default_grid(pot, 1000), 0, 4)
    for a, b in zip(coarse, fine):
        assert abs(a.energy - b.energy) < 1e-3 * abs(b.energy)


def test_variational_bracket():
    pot = narrow(0.05)
    d = pot.width()
    h = 0.02 * d
    energies = []
    for half in (2, 3, 4, 6):
        n = int(round(2 * half * d / h)) + 1
        grid = RadialGrid(R - half * d, R - half * d + (n - 1) * h, n)
        energies.append(solve_radial(pot, grid, 0, 1)[0].energy)
    assert all(a > b for a, b in zip(energies, energies[1:]))


def test_centrifugal_monotone():
    pot = narrow(0.1)
    grid = default_grid(pot, 800)
    for n in range(3):
        levels = [solve_radial(pot, grid, m, 3)[n].energy for m in range(5)]
        assert all(a <= b for a, b in zip(levels, levels[1:]))
        assert solve_radial(pot, grid, -2, 3)[n].energy == pytest.approx(levels[2], rel=1e-14)


def test_tabulated_matches_parabola():
    pot = narrow(0.05)
    grid = default_grid(pot, 1000)
    rho = np.linspace(grid.rho_min, grid.rho_max, 4001)
    tab = TabulatedPotential(rho, pot(rho))
    a = solve_radial(pot, grid, 1, 3)
    b = solve_radial(tab, grid, 1, 3)
    for x, y in zip(a, b):
        assert y.energy == pytest.approx(x.energy, rel=1e-5)


def test_tabulated_no_extrapolation():
    tab = TabulatedPotential.from_samples([(1.0, 0.0), (2.0, 1.0), (3.0, 4.0)])
    with pytest.raises(ValueError, match="outside"):
        tab(np.array([0.5]))
    with pytest.raises(ValueError):
        TabulatedPotential([1.0, 1.0, 2.0], [0.0, 1.0, 2.0])


def test_too_many_states():
    pot = narrow()
    with pytest.raises(ValueError, match="too coarse"):
        solve_radial(pot, default_grid(pot, 40), 0, 11)


def test_grid_validation():
    with pytest.raises(ValueError):
        RadialGrid(0.0, 1.0, 100)
    with pytest.raises(ValueError):
        RadialGrid(2.0, 1.0, 100)
    with pytest.raises(ValueError):
        RadialGrid(1.0, 2.0, 10)


def test_default_grid_bounds():
    pot = narrow(0.02)
    d = pot.width()
    g = default_grid(pot, 100)
    assert g.rho_min == pytest.approx(R - 8 * d)
    assert g.rho_max == pytest.approx(R + 8 * d)
    wide = DisplacedParabola.from_width(10.0, 20.0)
    assert default_grid(wide, 100).rho_min == pytest.approx(1.0)
