"""
This module contains the PrimalEstimate class.
"""

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

import math

from numpy.typing import ArrayLike

from .core_linalg import Vector, as_vector


class PrimalEstimate:
    """
    Lower estimate of the primal supremum α = sup{p₀(x) : ‖x‖ = 1, p_i(x) ≤ ρ_i}, the feasible unit witness
    attaining it and whether the estimate is the exact supremum. With infeasible constraints the value is -inf and
    there is no witness.
    """

    __alpha_lower: float
    __witness: Vector | None
    __exact: bool

    def __init__(self, alpha_lower: float, witness: ArrayLike | None, exact: bool) -> None:
        """
        PrimalEstimate constructor.

        Args:
            alpha_lower (float): Primal value, -inf when infeasible.
            witness (ArrayLike | None): Feasible unit vector attaining the value, None when infeasible.
            exact (bool): Whether the value is the exact supremum.

        Raises:
            ValueError: If a finite value comes without a witness.
        """
        if witness is None and not math.isinf(alpha_lower):
            raise ValueError('A finite primal value needs a witness.')

        self.__alpha_lower = float(alpha_lower)
        self.__witness = None if witness is None else as_vector(witness, name='witness')
        self.__exact = exact

    @override
    def __repr__(self) -> str:
        """
        Get string representation of PrimalEstimate.

        Returns:
            str: String representation of PrimalEstimate.
        """
        witness = None if self.__witness is None else self.__witness.tolist()
        return f'PrimalEstimate(alpha_lower={self.__alpha_lower!r}, witness={witness}, exact={self.__exact})'

    @property
    def alpha_lower(self) -> float:
        """
        Get the primal value.

        Returns:
            float: α estimate.
        """
        return self.__alpha_lower

    @property
    def witness(self) -> Vector | None:
        """
        Get the witness.

        Returns:
            Vector | None: Copy of the witness.
        """
        return None if self.__witness is None else self.__witness.copy()

    @property
    def exact(self) -> bool:
        """
        Whether the value is the exact supremum.

        Returns:
            bool: Exactness flag.
        """
        return self.__exact

    @property
    def feasible(self) -> bool:
        """
        Whether a feasible point exists.

        Returns:
            bool: True unless the value is -inf.
        """
        return self.__witness is not None
