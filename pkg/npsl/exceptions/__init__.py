from .approximate_only_error import ApproximateOnlyError
from .convergence_error import ConvergenceError
from .duality_gap_error import DualityGapError
from .hypothesis_violation_error import HypothesisViolationError
from .input_error import InputError
from .nonlinearity_declaration_error import NonlinearityDeclarationError
from .npsl_error import NpslError
from .reducible_matrix_error import ReducibleMatrixError
from .shape_error import ShapeError
from .singular_matrix_error import SingularMatrixError
from .unsupported_norm_error import UnsupportedNormError

__all__ = (
    'ApproximateOnlyError',
    'ConvergenceError',
    'DualityGapError',
    'HypothesisViolationError',
    'InputError',
    'NonlinearityDeclarationError',
    'NpslError',
    'ReducibleMatrixError',
    'ShapeError',
    'SingularMatrixError',
    'UnsupportedNormError',
)
