"""
Duality gap error exception.
"""

from .npsl_error import NpslError


class DualityGapError(NpslError):
    """
    Exception raised when a zero duality gap was expected but the primal and dual values disagree numerically.
    """

    __alpha: float
    __beta: float

    def __init__(self, alpha: float, beta: float, tolerance: float) -> None:
        """
        Initialize the DualityGapError.

        Args:
            alpha (float): Primal value.
            beta (float): Dual value.
            tolerance (float): Allowed gap.
        """
        self.__alpha = alpha
        self.__beta = beta

        message = f'Duality gap <<<{beta - alpha:.3e}>>> exceeds <<<{tolerance:.1e}>>> (alpha={alpha}, beta={beta}).'
        super().__init__(message)

    @property
    def alpha(self) -> float:
        """
        Get the primal value.

        Returns:
            float: Primal value.
        """
        return self.__alpha

    @property
    def beta(self) -> float:
        """
        Get the dual value.

        Returns:
            float: Dual value.
        """
        return self.__beta
