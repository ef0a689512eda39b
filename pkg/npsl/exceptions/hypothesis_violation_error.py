"""
Hypothesis violation error exception.
"""

from .npsl_error import NpslError


class HypothesisViolationError(NpslError):
    """
    Exception raised when a structural hypothesis required by a zero-gap or certification result does not hold.
    """

    __hypothesis: str

    def __init__(self, hypothesis: str, detail: str | None = None) -> None:
        """
        Initialize the HypothesisViolationError.

        Args:
            hypothesis (str): The violated hypothesis, verbatim (e.g. "requires ϰ‖CR⁻¹‖∞ < 1").
            detail (str | None, optional): Extra context. Default to None.
        """
        self.__hypothesis = hypothesis

        message = f'Hypothesis violated: <<<{hypothesis}>>>.'
        if detail:
            message += f' {detail}'

        super().__init__(message)

    @property
    def hypothesis(self) -> str:
        """
        Get the violated hypothesis.

        Returns:
            str: The hypothesis text.
        """
        return self.__hypothesis
