"""Vacuum radiative (Lamb) shifts of electron levels in 1D and 2D quantum rings."""

__version__ = "0.1.0"

from .units import (  # noqa: E402
    CODATA,
    CutoffWindow,
    PhysicalConstants,
    Ring1DSpec,
    WindowReport,
    WindowStatus,
    characteristic_chi,
    check_cutoff_window,
    epsilon0,
)
from .ring1d import (  # noqa: E402
    ShiftResult,
    flux_scan,
    lamb_shift_1d,
    lamb_shift_1d_rewritten,
    matrix_element_1d,
    minimal_shift_1d,
    spectrum_1d,
)
from .cavity import CavityModeSpec, ResonanceError, cavity_shift, vacuum_cavity_shift  # noqa: E402
from .radial import (  # noqa: E402
    DisplacedParabola,
    RadialEigenpair,
    RadialGrid,
    TabulatedPotential,
    harmonic_reference,
    mean_radius,
    solve_radial,
    transition_radial_element,
)
from .shift2d import (  # noqa: E402
    BasisTruncation,
    bethe_log_shift,
    diagonal_shift_2d,
    nondiagonal_shift_2d,
    parabolic_lowest_shift,
    sum_rule_check,
    total_shift_2d,
)
