"""
A ring inside a single-mode cavity
==================================

Replacing the vacuum continuum by one cavity mode of frequency omega gives
a shift with emission terms (weight N + 1) and absorption terms (weight N),
N being the photon number.
"""

import numpy as np

from ringshift import Ring1DSpec
from ringshift.cavity import CavityModeSpec, ResonanceError, cavity_shift

spec = Ring1DSpec(radius=20.0, flux=0.3)
eps0 = spec.epsilon0

# Sweep a one-photon mode across the ring's transition energies. Absorption
# from m=0 to m=1 costs eps0 * Lambda_+ = 1.6 eps0 and is resonant there.
for ratio in np.linspace(0.2, 4.0, 20):
    mode = CavityModeSpec(omega=ratio * eps0, amplitude=1.0, photon_number=1)
    try:
        shift = cavity_shift(spec, mode, m=0).total
        print(f"omega = {ratio:5.2f} eps0: shift = {shift:+.4e} eV")
    except ResonanceError as exc:
        print(f"omega = {ratio:5.2f} eps0: resonant ({exc.label})")

# Adding photons changes the shift linearly in N
mode = CavityModeSpec(omega=2.5 * eps0, amplitude=1.0)
for n in range(4):
    mode_n = CavityModeSpec(mode.omega, mode.amplitude, n)
    print(f"N = {n}: {cavity_shift(spec, mode_n, 0).total:+.6e} eV")
