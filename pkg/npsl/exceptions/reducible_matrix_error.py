"""
Reducible matrix error exception.
"""

from .npsl_error import NpslError


class ReducibleMatrixError(NpslError):
    """
    Exception raised when a Perron pair is requested for a reducible Metzler matrix, whose dominant eigenvectors need
    not be strictly positive.
    """

    def __init__(self, size: int) -> None:
        """
        Initialize the ReducibleMatrixError.

        Args:
            size (int): Dimension of the offending matrix.
        """
        super().__init__(f'Metzler matrix of size <<<{size}>>> is reducible, its Perron vectors may vanish.')
