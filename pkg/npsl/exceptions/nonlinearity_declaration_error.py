"""
Nonlinearity declaration error exception.
"""

from .npsl_error import NpslError


class NonlinearityDeclarationError(NpslError):
    """
    Exception raised when a nonlinearity violates the sector or slope bounds it declares.
    """

    def __init__(self, kind: str, bound: str, worst: float) -> None:
        """
        Initialize the NonlinearityDeclarationError.

        Args:
            kind (str): Nonlinearity kind.
            bound (str): Which declaration failed, 'sector' or 'slope'.
            worst (float): Input value (or quotient) at which the violation was found.
        """
        super().__init__(f'Nonlinearity <<<{kind}>>> violates its declared {bound} near <<<{worst}>>>.')
