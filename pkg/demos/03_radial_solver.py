"""
Radial states of a ring of finite width
=======================================

A two-dimensional ring is modelled by the displaced parabola
V(rho) = (V0/2)(rho - R)^2. For a narrow ring the lowest radial states are
those of a harmonic oscillator centred on R.
"""

import numpy as np

from ringshift.radial import (
    DisplacedParabola,
    default_grid,
    harmonic_reference,
    mean_radius,
    solve_radial,
)

pot = DisplacedParabola(v0=1.68, radius=20.0)
ref = harmonic_reference(pot.v0, pot.radius)
print(f"oscillator length d = {ref.width:.3f} nm (d/R = {ref.width / pot.radius:.3f})")
print(f"harmonic zero-point energy = {ref.epsilon_radial:.5f} eV")

grid = default_grid(pot, n_points=2000)
states = solve_radial(pot, grid, m=0, n_states=4)
for s in states:
    print(f"{s.label}: E = {s.energy:.5f} eV, <rho> = {mean_radius(s):.5f} nm")

# The spacing is the oscillator quantum 2 * eps_radial
gaps = np.diff([s.energy for s in states])
print("level spacings / (2 eps_radial):", np.round(gaps / (2 * ref.epsilon_radial), 5))

# The ground state is close to the harmonic Gaussian
dev = np.max(np.abs(states[0].values - ref.gaussian(grid.points)))
print(f"max |R_0 - Gaussian| = {dev / ref.gaussian(pot.radius):.2%} of the peak")

# The centrifugal term lifts higher angular channels only slightly
for m in (0, 1, 5, 20):
    print(f"m = {m:2d}: E_0 = {solve_radial(pot, grid, m, 1)[0].energy:.7f} eV")
