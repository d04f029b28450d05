"""Lieb-Thirring-type constants for the Dirac operator on the n-sphere.

Closed-form constants (:mod:`diraclt.constants`), the exact Dirac spectrum
(:mod:`diraclt.spectrum`), spectral integrals and ratio minimisation
(:mod:`diraclt.infimum`) and exact filled-shell checks
(:mod:`diraclt.families`).
"""
from .constants import (
    BoundSet,
    bound_set,
    build_table,
    c_lower,
    c_prime,
    classical_lt,
    dirac_lt_best,
    dirac_lt_lower,
    dirac_sq_lt_lower,
    k_upper,
    kowalski_lower,
    sphere_surface,
)
from .families import bracket_scan, dirac_shell_report, scalar_shell_report
from .infimum import critical_points, i1_closed, integral_oracle, ratio_scan, s2_closed_form, s2_envelope
from .spectrum import count_envelope, cumulative_count, dirac_eigenvalue, dirac_multiplicity

__version__ = "0.1.0"
