"""
Convergence error exception.
"""

from .npsl_error import NpslError


class ConvergenceError(NpslError):
    """
    Exception raised when an iterative routine (eigensolver, power iteration, LP solver) stops without converging.
    """

    __iterations: int | None

    def __init__(self, routine: str, iterations: int | None = None, detail: str | None = None) -> None:
        """
        Initialize the ConvergenceError.

        Args:
            routine (str): Name of the routine that failed.
            iterations (int | None, optional): Iterations performed before giving up, when known. Default to None.
            detail (str | None, optional): Message reported by the backend. Default to None.
        """
        self.__iterations = iterations

        message = f'<<<{routine}>>> did not converge'
        if iterations is not None:
            message += f' after <<<{iterations}>>> iterations'
        message += '.' if detail is None else f': {detail}'

        super().__init__(message)

    @property
    def iterations(self) -> int | None:
        """
        Get the number of iterations performed.

        Returns:
            int | None: Iteration count, if known.
        """
        return self.__iterations
