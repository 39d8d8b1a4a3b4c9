"""Named parameter sets for the ring systems discussed in the literature.

The semiconductor ring carries its published cut-off (10 meV). The benzene
and porphyrin rings have no published cut-off; theirs sit at the geometric
centre of the window eps0 << k_max << sqrt(m c^2 eps0). The 2D presets pin
the logarithm ln(k_max / eps_bar) to the value that reproduces the quoted
shifts, since neither k_max nor eps_bar is available for them.
"""

PRESETS = {
    "semiconductor-ring": {
        "radius_nm": 20.0,
        "mass_ratio": 1.0,
        "kmax_ev": 0.01,
    },
    "benzene": {
        "radius_nm": 0.134,
        "mass_ratio": 1.0,
        "kmax_ev": 47.0,
    },
    "porphyrin": {
        "radius_nm": 0.36,
        "mass_ratio": 1.0,
        "kmax_ev": 10.7,
    },
    "gaas-2d": {
        "radius_nm": 20.0,
        "mass_ratio": 1.0,
        "v0_ev_nm2": 1.68,
        "log_factor": 4.64,
    },
    "porphyrin-2d": {
        "radius_nm": 0.36,
        "mass_ratio": 1.0,
        "v0_ev_nm2": 215.0,
        "log_factor": 3.36,
    },
}
