"""integralgap: geometry of integral-distance-avoiding open sets in
d-dimensional p-normed spaces.

Submodules: geometry (spaces, truncated balls, lines), planar (exact
disc clipping), volume (closed forms, quadrature, Monte Carlo),
diophantine (fractional-part scaling search), constructions (chain,
two-component, parabola, prime-gon), certifier (sound distance
intervals and line profiles), odd_distances (odd integral distance
point sets), cli (command-line interface).
"""

from .certifier import (BoundsTable, Certificate, DistanceInterval,
                        bounds_table, certify, integer_free, line_profile,
                        pair_distance_interval, propagate_bounds)
from .constructions import (ConstructionParams, min_separation_k, nested_chain,
                            parabola, pgon, two_component)
from .diophantine import (ScalingCheck, ScalingSolution, SineBasis,
                          check_scaling, find_scaling, fractional_part,
                          independence_probe, sine_basis)
from .errors import (InputError, ParameterError, SearchExhaustedError,
                     UnsupportedError)
from .geometry import (Arrangement, Component, Line, PNormSpace, SlabCut,
                       ball, dual_functional, line_intersection, make_cut,
                       sample_members, standard_box)
from .odd_distances import (PointSet, cayley_menger_embeddable,
                            half_integral_centers, odd_distance_verify,
                            odd_set_search, reconstruct_coordinates)
from .volume import (VolumeEstimate, arrangement_volume, ball_volume,
                     cos_power_integral, diameter_width_bound,
                     euclidean_slice_volume, exact_area_2d,
                     manhattan_slice_volume, maxnorm_slice_volume,
                     monte_carlo_volume, slice_component, slice_volume)

__version__ = "1.0.0"

__all__ = [
    "Arrangement", "BoundsTable", "Certificate", "Component",
    "ConstructionParams", "DistanceInterval", "InputError", "Line",
    "PNormSpace", "ParameterError", "PointSet", "ScalingCheck",
    "ScalingSolution", "SearchExhaustedError", "SineBasis", "SlabCut",
    "UnsupportedError", "VolumeEstimate", "arrangement_volume", "ball",
    "ball_volume", "bounds_table", "cayley_menger_embeddable", "certify",
    "check_scaling", "cos_power_integral", "diameter_width_bound",
    "dual_functional", "euclidean_slice_volume", "exact_area_2d",
    "find_scaling", "fractional_part", "half_integral_centers",
    "independence_probe", "integer_free", "line_intersection",
    "line_profile", "make_cut", "manhattan_slice_volume",
    "maxnorm_slice_volume", "min_separation_k", "monte_carlo_volume",
    "nested_chain", "odd_distance_verify", "odd_set_search",
    "pair_distance_interval", "parabola", "pgon", "propagate_bounds",
    "reconstruct_coordinates", "sample_members", "sine_basis",
    "slice_component", "slice_volume", "standard_box", "two_component",
]
