"""
Shape error exception.
"""

from .npsl_error import NpslError


class ShapeError(NpslError):
    """
    Exception raised when an array has the wrong shape, is empty or holds non-finite entries.
    """
