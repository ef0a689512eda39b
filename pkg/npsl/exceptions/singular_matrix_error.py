"""
Singular matrix error exception.
"""

from .npsl_error import NpslError


class SingularMatrixError(NpslError):
    """
    Exception raised when a matrix is singular or too ill-conditioned to work with.
    """

    __condition: float

    def __init__(self, condition: float, message: str | None = None) -> None:
        """
        Initialize the SingularMatrixError with the estimated condition number.

        Args:
            condition (float): Estimated 2-norm condition number of the offending matrix.
            message (str | None, optional): Custom message. Default to a generic one.
        """
        self.__condition = condition

        super().__init__(message or f'Matrix is singular to working precision (condition <<<{condition:.3e}>>>).')

    @property
    def condition(self) -> float:
        """
        Get the estimated condition number.

        Returns:
            float: The condition number, inf when exactly singular.
        """
        return self.__condition
