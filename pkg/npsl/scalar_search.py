"""
Golden-section minimization of unimodal scalar functions, with geometric bracketing on a half line.
"""

import logging
import math
from collections.abc import Callable
from typing import NamedTuple

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARED = (3 - math.sqrt(5)) / 2


class ScalarMinimum(NamedTuple):
    """
    Best point found by a scalar search, its value and the number of function evaluations.
    """

    x: float
    value: float
    evaluations: int


class Bracket(NamedTuple):
    """
    Interval [lower, upper] holding a minimizer of a convex function on [0, inf). When `unbounded` is set the
    function kept decreasing below the floor; when `exhausted` is set it kept decreasing up to the last expansion.
    """

    lower: float
    upper: float
    evaluations: int
    unbounded: bool
    exhausted: bool


def golden_section(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float = 1e-12,
    max_iter: int = 500,
) -> ScalarMinimum:
    """
    Minimize a unimodal function on [lower, upper] by golden-section search, reusing one evaluation per iteration.

    The interval is shrunk until its width is at most tol·max(1, |x|). Both endpoints are evaluated too, so a minimum
    on the boundary is returned exactly.

    Args:
        func (Callable[[float], float]): Function to minimize.
        lower (float): Left end.
        upper (float): Right end.
        tol (float, optional): Relative width tolerance. Default to 1e-12.
        max_iter (int, optional): Iteration cap. Default to 500.

    Returns:
        ScalarMinimum: Best evaluated point.

    Example:
    ```python
    from npsl.scalar_search import golden_section

    result = golden_section(lambda x: (x - 2) ** 2, 1, 5)
    print(round(result.x, 9))
    # >>> 2.0
    ```
    """
    a, b = min(lower, upper), max(lower, upper)
    best = min(((a, func(a)), (b, func(b))), key=lambda pair: pair[1])
    evaluations = 2

    h = b - a
    c, d = a + INV_PHI_SQUARED * h, a + INV_PHI * h
    yc, yd = func(c), func(d)
    evaluations += 2

    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            break
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARED * h
            yc = func(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = func(d)
        evaluations += 1

    for point in ((c, yc), (d, yd)):
        if point[1] < best[1]:
            best = point

    return ScalarMinimum(x=best[0], value=best[1], evaluations=evaluations)


def bracket_half_line(
    func: Callable[[float], float],
    start: float = 1.0,
    factor: float = 4.0,
    max_steps: int = 40,
    floor: float = -1e12,
) -> Bracket:
    """
    Bracket a minimizer of a convex function on [0, inf) by geometric expansion start·factor^k.

    Expansion stops as soon as the value stops decreasing; the minimizer then lies between the point two expansions
    back and the current one.

    Args:
        func (Callable[[float], float]): Convex function on [0, inf).
        start (float, optional): First expansion point. Default to 1.
        factor (float, optional): Expansion factor. Default to 4.
        max_steps (int, optional): Expansion cap. Default to 40.
        floor (float, optional): Values below it are taken as unbounded below. Default to -1e12.

    Returns:
        Bracket: The bracket and its flags.
    """
    points = [0.0, start]
    values = [func(0.0), func(start)]

    for _ in range(max_steps):
        if values[-1] < floor:
            return Bracket(points[-2], points[-1], len(values), unbounded=True, exhausted=False)
        if values[-1] >= values[-2]:
            lower = points[-3] if len(points) >= 3 else 0.0
            return Bracket(lower, points[-1], len(values), unbounded=False, exhausted=False)
        points.append(points[-1] * factor)
        values.append(func(points[-1]))

    logger.debug('bracket still decreasing at %.3e', points[-1])
    unbounded = values[-1] < floor
    return Bracket(points[-2], points[-1], len(values), unbounded=unbounded, exhausted=not unbounded)
