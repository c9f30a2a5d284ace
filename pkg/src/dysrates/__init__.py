"""Contraction and averagedness factors for Davis-Yin three-operator
splitting, computed and certified on the complex plane.

The package builds scaled-relative-graph regions for operator classes,
evaluates and maximizes the splitting symbol over region boundaries with a
Lipschitz-certified bound, provides the closed-form factors with their
preconditions, and cross-checks everything against explicit 2x2 operator
realizations.
"""

from .classes import (Averaged, Cocoercive, Lipschitz, Monotone,
                      OperatorClassSpec, PreflightReport,
                      ShiftedLipschitzBall, StronglyMonotone, averaged,
                      cocoercive, dys_preflight, enlarge_C, is_monotone_class,
                      lipschitz, monotone, resolvent_srg,
                      shifted_lipschitz_ball, srg, strongly_monotone)
from .errors import (AmbiguousArgmaxError, DysRatesError, EmptyRegionError,
                     InvalidClassError, PreconditionError,
                     SingularResolventError, UnboundedRegionError,
                     UnsupportedInversionError, UnsupportedOrientationError)
from .geometry import (Arc, BoundaryGrid, Disk, DiskExterior, HalfPlane,
                       Region, Segment, boundary_grid, boundary_pieces,
                       contains, farthest_point_on_circle, has_arc_property,
                       has_left_arc_property, has_right_arc_property, invert,
                       sample_boundary, scale, translate)
from .rates import (AveragednessReport, DominanceReport, ParameterRanges,
                    RateReport, averagedness_thm41, contraction_thm31,
                    contraction_thm32, contraction_thm33, default_eps,
                    default_eta, dominance_check, updated_prior_factors)
from .search import (SearchConfig, SearchResult, ascend, coordinate_polish,
                     grid_evaluate, search, search_regions)
from .symbol import (DysParams, grad_shifted_modulus_sq, lipschitz_bound,
                     lipschitz_bound_coarse, shifted_modulus,
                     shifted_modulus_sq, zeta, zeta_partials)
from .verify import (VerificationReport, class_membership, dys_matrix,
                     operator_from_resolvent_point, realize, rotation_value,
                     spectral_norm_2x2, verify_averagedness,
                     verify_contraction)

__version__ = "0.1.0"
