"""
Bethe-logarithm estimate for parabolic rings
============================================

Replacing every transition logarithm by one effective logarithm turns the
two-dimensional shift into alpha (hbar c)^2 ln(k_max/eps_bar) <lap V> /
(pi (m c^2)^2). For the displaced parabola <lap V> -> V0 in the narrow
limit, while the quoted closed form carries 2 V0.
"""

from ringshift.radial import DisplacedParabola, default_grid, solve_radial
from ringshift.shift2d import bethe_log_shift, parabolic_lowest_shift, parabolic_prefactor

cases = {
    "GaAs ring": (1.68, 20.0, 4.64),
    "porphyrin": (215.0, 0.36, 3.36),
}
for name, (v0, radius, log_factor) in cases.items():
    pot = DisplacedParabola(v0, radius)
    pair = solve_radial(pot, default_grid(pot, 2000), 0, 1)[0]
    closed = parabolic_lowest_shift(v0, log_factor=log_factor)
    quad = bethe_log_shift(pair, pot, log_factor=log_factor)
    print(f"{name}: prefactor {parabolic_prefactor(v0):.4e} eV, "
          f"closed form {closed:.3e} eV, quadrature {quad:.3e} eV, "
          f"ratio {closed / quad:.4f}")
