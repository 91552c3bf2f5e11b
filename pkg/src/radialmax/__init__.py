"""Lower bounds on centered maximal-operator L^p constants for radial measures.

The library evaluates, entirely in log space, the measure geometry of
off-center balls against radially decreasing densities, builds the
certified lower-bound constructions for the operator constant, reproduces
the four critical exponents by 1-D supremum search, and cross-checks
everything against a brute-force oracle at low dimension.

All public functions are pure; results are deterministic for a fixed
configuration (and seed, where sampling is involved).
"""

from .bounds import (BoundReport, gaussian_ball_sandwich, gaussian_construction,
                     gaussian_mass_concentration, gaussian_mode_radius,
                     gaussian_upper_bound, general_construction, log_t_exact,
                     radius_growth_report, solve_radius_equation,
                     unitball_case_analysis, unitball_construction,
                     unitball_sandwich)
from .densities import (Gaussian, Lebesgue, RadialDensity, TabulatedDecreasing,
                        UnitBallIndicator, density_from_name)
from .errors import BracketError, NoBalancedRadiusError, NonFiniteMeasureError
from .geometry import (cap_log_area, cone_ball_measure, contact_angle,
                       contact_angle_unit_ball, intersect_with_centered_ball,
                       intersection_angle, off_center_ball_measure)
from .logspace import LOG_ZERO, log_add, log_sub, log_sum
from .measures import (log_annulus_measure, log_ball_measure, log_mass,
                       log_sphere_area, sphere_ratio_bounds)
from .optimize import (SupremumResult, find_root, growth_base_log,
                       max_growth_base_log, maximize_scalar, p0_gaussian,
                       p0_general, p0_unitball, p1_gaussian)
from .oracle import (RadialProfile, empirical_constant_lower_bound,
                     maximal_function_at, maximal_profile,
                     monte_carlo_ball_measure, verify_level_set_inclusion)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BracketError",
    "Gaussian",
    "LOG_ZERO",
    "Lebesgue",
    "NoBalancedRadiusError",
    "NonFiniteMeasureError",
    "RadialDensity",
    "RadialProfile",
    "SupremumResult",
    "TabulatedDecreasing",
    "UnitBallIndicator",
    "cap_log_area",
    "cone_ball_measure",
    "contact_angle",
    "contact_angle_unit_ball",
    "density_from_name",
    "empirical_constant_lower_bound",
    "find_root",
    "gaussian_ball_sandwich",
    "gaussian_construction",
    "gaussian_mass_concentration",
    "gaussian_mode_radius",
    "gaussian_upper_bound",
    "general_construction",
    "growth_base_log",
    "intersect_with_centered_ball",
    "intersection_angle",
    "log_add",
    "log_annulus_measure",
    "log_ball_measure",
    "log_mass",
    "log_sphere_area",
    "log_sub",
    "log_sum",
    "log_t_exact",
    "max_growth_base_log",
    "maximal_function_at",
    "maximal_profile",
    "maximize_scalar",
    "monte_carlo_ball_measure",
    "off_center_ball_measure",
    "p0_gaussian",
    "p0_general",
    "p0_unitball",
    "p1_gaussian",
    "radius_growth_report",
    "solve_radius_equation",
    "sphere_ratio_bounds",
    "unitball_case_analysis",
    "unitball_construction",
    "unitball_sandwich",
    "verify_level_set_inclusion",
]
