"""Linear differential operators and recurrences for algebraic power series."""
from .arith import GF, QQ, BiPoly, FieldSpec, UniPoly, parse_bipoly
from .diffop import DiffOp
from .errors import HypothesisError, NotFound, ReconstructionError
from .lift import newton_lift, lift_scalar_root
from .resolvent import cockle_fraction, cockle_series, find_lucky_point, resolvent
from .telescope import find_lambda, find_theta_operator, verify_associated
from .algtodiff import alg_to_diff, alg_to_diff_prob
from .rec import Recurrence, diffop_to_recurrence, expand, unroll

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "BiPoly", "FieldSpec", "UniPoly", "parse_bipoly", "DiffOp",
    "HypothesisError", "NotFound", "ReconstructionError", "newton_lift", "lift_scalar_root",
    "cockle_fraction", "cockle_series", "find_lucky_point", "resolvent", "find_lambda",
    "find_theta_operator", "verify_associated", "alg_to_diff", "alg_to_diff_prob",
    "Recurrence", "diffop_to_recurrence", "expand", "unroll",
]
