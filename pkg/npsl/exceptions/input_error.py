"""
Input error exception.
"""

from .npsl_error import NpslError


class InputError(NpslError):
    """
    Exception raised for malformed command line inputs: unreadable files, bad JSON, missing or invalid fields.
    """

    __line: int | None
    __column: int | None

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        """
        Initialize the InputError.

        Args:
            message (str): Description of the problem.
            line (int | None, optional): 1-based line of the offending input. Default to None.
            column (int | None, optional): 1-based column of the offending input. Default to None.
        """
        self.__line = line
        self.__column = column

        if line is not None:
            message = f'{message} (line {line}, column {column})'

        super().__init__(message)

    @property
    def line(self) -> int | None:
        """
        Get the offending line.

        Returns:
            int | None: Line number, if known.
        """
        return self.__line

    @property
    def column(self) -> int | None:
        """
        Get the offending column.

        Returns:
            int | None: Column number, if known.
        """
        return self.__column
