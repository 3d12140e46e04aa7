"""Chebyshev polynomials and Widom factors of polynomial preimages of
intervals: star sets, quadratic preimages, circular arcs and Shabat trees.
"""

from .cheb_complex import (ComplexMinimaxSolution, StarNormResult,
                           compose_chebyshev, monic_chebyshev,
                           quadratic_odd_norm, solve_discrete_minimax,
                           star_norm)
from .cheb_real import (MinimaxSolution, Weight, achieser_eval,
                        achieser_norm, achieser_weight, bernstein_predict,
                        equioscillation_audit, remez_weighted, unit_weight)
from .errors import (DegenerateSet, DomainError, EndpointSingularity,
                     NonConvergence, UnsupportedWeight, WidomlabError)
from .poly import Poly, RootSet, compose, derivative, eval_poly, \
    preimage_points, solve_roots
from .potential import (CapacityResult, cap_interval, cap_preimage,
                        equilibrium_density_star, exterior_map_unit,
                        green_interval, interval_harmonic_measure,
                        joukowski_exterior, log_potential_interval)
from .sets import (DiscreteSet, SetSpec, cap_spiked_circle, default_per_edge,
                   discretize, phi_star, shabat_example, shabat_spec,
                   spiked_circle_radius)
from .widom import (WidomLimit, WidomRecord, gamma_ratio, gamma_step,
                    ortho_norm_direct, widom_inf_series, widom_l2_series,
                    widom_limit)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
