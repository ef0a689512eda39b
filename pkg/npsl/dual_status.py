"""
Dual status module.
"""

from enum import Enum, unique


@unique
class DualStatus(str, Enum):
    """
    DualStatus enum class.

    Example:
    ```python
    from npsl import DualStatus

    status = DualStatus.OPTIMAL
    print(status.value)
    # >>> optimal
    ```
    """

    OPTIMAL = 'optimal'
    UNBOUNDED_BELOW = 'unbounded_below'
    MAX_ITER = 'max_iter'
