"""
Unsupported norm error exception.
"""

from .npsl_error import NpslError


class UnsupportedNormError(NpslError):
    """
    Exception raised when an operation is only defined for some values of p.
    """

    __p: float

    def __init__(self, operation: str, p: float, supported: str) -> None:
        """
        Initialize the UnsupportedNormError.

        Args:
            operation (str): Name of the operation.
            p (float): Requested norm exponent.
            supported (str): Description of the supported exponents.
        """
        self.__p = p

        super().__init__(f'<<<{operation}>>> does not support p=<<<{p}>>>. Supported: <<<{supported}>>>.')

    @property
    def p(self) -> float:
        """
        Get the rejected norm exponent.

        Returns:
            float: The exponent p.
        """
        return self.__p
