"""Binary projective three-weight codes and the 2-designs they hold."""

__version__ = "0.1.0"

from .field import FieldContext, FieldError, make_field
from .codes import (CodeError, LinearCode, WeightDistribution, dual_code, is_projective,
                    macwilliams_dual, min_distance, pless_check, three_weight_profile)
from .constructions import (build_d_rho, d_rho_set, defining_set_code, etw_gate, extend_code,
                            quadric_two_weight)
from .designs import (Design, assmus_mattson_gate, dual_design_verify, predicted_dual_lambda,
                      predicted_lambda, support_blocks, verify_t_design)

__all__ = [
    "FieldContext", "FieldError", "make_field",
    "CodeError", "LinearCode", "WeightDistribution", "dual_code", "is_projective", "macwilliams_dual",
    "min_distance", "pless_check", "three_weight_profile",
    "build_d_rho", "d_rho_set", "defining_set_code", "etw_gate", "extend_code", "quadric_two_weight",
    "Design", "assmus_mattson_gate", "dual_design_verify", "predicted_dual_lambda", "predicted_lambda",
    "support_blocks", "verify_t_design",
]
