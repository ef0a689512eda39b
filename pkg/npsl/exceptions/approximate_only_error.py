"""
Approximate only error exception.
"""

from .unsupported_norm_error import UnsupportedNormError


class ApproximateOnlyError(UnsupportedNormError):
    """
    Exception raised when an exact log norm is requested for p outside {1, 2, inf}. Only sampled lower bounds exist
    there, see `npsl.pairings.log_norm_sampled`.
    """

    def __init__(self, p: float) -> None:
        """
        Initialize the ApproximateOnlyError.

        Args:
            p (float): Requested norm exponent.
        """
        super().__init__(
            operation='log_norm',
            p=p,
            supported='1, 2, inf (approximate-only otherwise, use log_norm_sampled)',
        )
