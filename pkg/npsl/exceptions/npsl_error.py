"""
npsl base exception.
"""


class NpslError(Exception):
    """
    npsl base exception.
    """

    __message: str

    def __init__(self, message: str) -> None:
        """
        npsl base exception constructor.

        Args:
            message (str): Human readable description of the failure.
        """
        self.__message = message

        super().__init__(message)

    @property
    def message(self) -> str:
        """
        Get the exception message.

        Returns:
            str: The exception message.
        """
        return self.__message
