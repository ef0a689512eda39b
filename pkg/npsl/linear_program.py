"""
Small dense linear programs solved with HiGHS through scipy.
"""

import logging
from enum import Enum, unique
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import linprog

from .core_linalg import Vector
from .exceptions import ConvergenceError

logger = logging.getLogger(__name__)

Bounds = list[tuple[float | None, float | None]]

FEASIBILITY_TOL = 1e-10


@unique
class LpStatus(str, Enum):
    """
    Outcome of a linear program.
    """

    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


class LpResult(NamedTuple):
    """
    Linear program outcome: status, minimizer and minimum (None unless optimal).
    """

    status: LpStatus
    x: Vector | None
    value: float | None


def minimize_lp(
    c: ArrayLike,
    A_ub: ArrayLike | None = None,
    b_ub: ArrayLike | None = None,
    A_eq: ArrayLike | None = None,
    b_eq: ArrayLike | None = None,
    bounds: Bounds | tuple[float | None, float | None] = (0, None),
) -> LpResult:
    """
    Minimize cᵀx subject to A_ub x ≤ b_ub, A_eq x = b_eq and variable bounds.

    Args:
        c (ArrayLike): Objective coefficients.
        A_ub (ArrayLike | None, optional): Inequality matrix. Default to None.
        b_ub (ArrayLike | None, optional): Inequality right-hand side. Default to None.
        A_eq (ArrayLike | None, optional): Equality matrix. Default to None.
        b_eq (ArrayLike | None, optional): Equality right-hand side. Default to None.
        bounds (Bounds | tuple[float | None, float | None], optional): Per-variable or shared bounds. Default to
        nonnegative variables.

    Raises:
        ConvergenceError: If HiGHS stops for any reason other than optimality, infeasibility or unboundedness.

    Returns:
        LpResult: The outcome.

    Example:
    ```python
    from npsl.linear_program import minimize_lp

    result = minimize_lp(c=[-1, -2], A_ub=[[1, 1]], b_ub=[1])
    print(result.status, result.value)
    # >>> LpStatus.OPTIMAL -2.0
    ```
    """
    result = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=bounds,
        method='highs',
        options={'primal_feasibility_tolerance': FEASIBILITY_TOL, 'dual_feasibility_tolerance': FEASIBILITY_TOL},
    )

    if result.status == 0:
        return LpResult(status=LpStatus.OPTIMAL, x=np.asarray(result.x, dtype=np.float64), value=float(result.fun))

    if result.status == 2:
        return LpResult(status=LpStatus.INFEASIBLE, x=None, value=None)

    if result.status == 3:
        return LpResult(status=LpStatus.UNBOUNDED, x=None, value=None)

    logger.warning('linprog stopped with status %d: %s', result.status, result.message)
    raise ConvergenceError(routine='linprog', iterations=int(result.nit), detail=str(result.message))
