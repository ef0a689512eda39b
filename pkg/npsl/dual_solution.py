"""
This module contains the DualSolution class.
"""

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

import numpy as np
from numpy.typing import ArrayLike

from .core_linalg import Vector
from .dual_status import DualStatus


class DualSolution:
    """
    Result of minimizing g(τ) = μ(P₀ - Σ τ_j P_j) + τᵀρ over τ ≥ 0: the value β, the multipliers τ, the work spent
    and how the search ended. β is -inf when the dual is unbounded below.
    """

    __beta: float
    __tau: Vector
    __iterations: int
    __status: DualStatus

    def __init__(self, beta: float, tau: ArrayLike, iterations: int, status: DualStatus) -> None:
        """
        DualSolution constructor.

        Args:
            beta (float): Dual value.
            tau (ArrayLike): Multipliers, nonnegative.
            iterations (int): Objective evaluations or solver iterations spent.
            status (DualStatus): How the search ended.

        Raises:
            ValueError: If some multiplier is negative.
        """
        multipliers = np.atleast_1d(np.asarray(tau, dtype=np.float64))
        if np.any(multipliers < 0):
            raise ValueError('Dual multipliers must be nonnegative.')

        multipliers.flags.writeable = False
        self.__beta = float(beta)
        self.__tau = multipliers
        self.__iterations = iterations
        self.__status = status

    @override
    def __repr__(self) -> str:
        """
        Get string representation of DualSolution.

        Returns:
            str: String representation of DualSolution.
        """
        return f'DualSolution(beta={self.__beta!r}, tau={self.__tau.tolist()}, status={self.__status.value})'

    @property
    def beta(self) -> float:
        """
        Get the dual value β.

        Returns:
            float: β.
        """
        return self.__beta

    @property
    def tau(self) -> Vector:
        """
        Get the multipliers τ.

        Returns:
            Vector: Read-only τ.
        """
        return self.__tau

    @property
    def iterations(self) -> int:
        """
        Get the work spent.

        Returns:
            int: Iterations.
        """
        return self.__iterations

    @property
    def status(self) -> DualStatus:
        """
        Get the status.

        Returns:
            DualStatus: Status.
        """
        return self.__status
