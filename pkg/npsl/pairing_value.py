"""
This module contains the PairingValue class.
"""

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover


class PairingValue:
    """
    Value of a weak pairing ⟦x, y⟧ with, for p=inf, the active index set I∞(y) = {i : |y_i| = ‖y‖∞}.

    Example:
    ```python
    from npsl.pairings import weak_pairing
    from npsl import NormSpec

    value = weak_pairing(x=[5, 0], y=[2, 2], spec=NormSpec(p=float('inf')))
    print(value)
    # >>> 10.0 over (0, 1)
    ```
    """

    __value: float
    __active_set: tuple[int, ...] | None

    def __init__(self, value: float, active_set: tuple[int, ...] | None = None) -> None:
        """
        PairingValue constructor.

        Args:
            value (float): Pairing value.
            active_set (tuple[int, ...] | None, optional): Active indices, only for p=inf. Default to None.

        Raises:
            ValueError: If an active set is given empty.
        """
        if active_set is not None and len(active_set) == 0:
            raise ValueError('Active index set must be nonempty.')

        self.__value = float(value)
        self.__active_set = active_set

    @override
    def __repr__(self) -> str:
        """
        Get string representation of PairingValue.

        Returns:
            str: String representation of PairingValue.
        """
        if self.__active_set is None:
            return f'{self.__value!r}'

        return f'{self.__value!r} over {self.__active_set}'

    def __float__(self) -> float:
        """
        Get the pairing value as a float.

        Returns:
            float: Pairing value.
        """
        return self.__value

    @property
    def value(self) -> float:
        """
        Get the pairing value.

        Returns:
            float: Pairing value.
        """
        return self.__value

    @property
    def active_set(self) -> tuple[int, ...] | None:
        """
        Get the active index set, None unless p=inf.

        Returns:
            tuple[int, ...] | None: Active indices in increasing order.
        """
        return self.__active_set
