"""Induced velocity of a circular vortex arc via incomplete elliptic integrals."""

__version__ = "0.1.0"

from .asymptotic import F1, N_MAX, SeriesEval, remainder_bounds, s_n, series_F
from .elliptic import (EllipticArgs, arc_integral, carlson_rd, carlson_rf, dF_dk,
                       ellint_E, ellint_Ek, ellint_F, ellint_K)
from .errors import (CoreProximityError, DegenerateModulusError, DivergenceError, DomainError,
                     QuadratureNonconvergence, SingularIntegrandError, ValidityWarning)
from .field import (EVALUATORS, FilamentNodeState, InductionConstants, V1_vector, dI_deps,
                    evaluate, filament_node_velocity, induction_constants, velocity_chain_rule,
                    velocity_elliptic, velocity_glie_asymptotic, velocity_lia, velocity_local)
from .geometry import ArcGeometry, EllipticParams, FieldPoint, FrameVelocity, coefficients
from .oracle import (arc_integral_quadrature, velocity_components_quadrature,
                     velocity_crossproduct_quadrature)

__all__ = [n for n in dir() if not n.startswith("_")]
