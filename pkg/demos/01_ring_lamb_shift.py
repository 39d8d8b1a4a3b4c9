"""
Lamb shift of a one-dimensional quantum ring
============================================

A ring of radius R threaded by a flux f (in flux quanta) has angular levels
eps0 (m + f)^2. Coupling to the vacuum field shifts each level by an amount
measured in units of chi = alpha eps0^2 / (m c^2).
"""

import numpy as np

from ringshift import Ring1DSpec, flux_scan, lamb_shift_1d
from ringshift.units import CutoffWindow, check_cutoff_window

# A 20 nm semiconductor ring with a 10 meV photon cut-off
spec = Ring1DSpec(radius=20.0)
k_max = 0.01
print(f"eps0 = {spec.epsilon0 * 1e6:.2f} ueV, chi = {spec.chi:.3e} eV")

# The cut-off must sit well inside eps0 << k_max << sqrt(m c^2 eps0)
report = check_cutoff_window(CutoffWindow(k_max, spec.epsilon0))
print(f"cut-off window: {report.status.value} "
      f"(k_max/eps0 = {report.lower_ratio:.0f}, upper margin {report.upper_ratio:.0f})")

# Each level gets two contributions, from virtual transitions to m -+ 1
res = lamb_shift_1d(spec, 0, k_max)
for label, value in res.per_term:
    print(f"  {label:>12s}: {value:.4e} eV")
print(f"shift of m=0: {res.total:.4e} eV = {res.in_chi_units:.4f} chi")

# Sweeping the flux. Every curve is a copy of the m=0 curve moved to f=-m,
# so the m-th minimum sits at f=-m.
f = np.linspace(-4.0, 4.0, 801)
table = flux_scan(spec, [0, 1, 2, 3], f, k_max)
m_col = np.array(table.column("m"))
shift = np.array(table.column("shift_over_chi"))
for m in range(4):
    curve = shift[m_col == m]
    print(f"m={m}: minimum {curve.min():.4f} chi at f = {f[np.argmin(curve)]:+.2f}")

# The table writes itself as CSV with units in the headers
print(table.to_csv().splitlines()[0])
