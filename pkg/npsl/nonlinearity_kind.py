"""
Nonlinearity kind module.
"""

from enum import Enum, unique


@unique
class NonlinearityKind(str, Enum):
    """
    NonlinearityKind enum class.

    Example:
    ```python
    from npsl import NonlinearityKind

    kind = NonlinearityKind.SATURATION
    print(kind.value)
    # >>> saturation
    ```
    """

    LINEAR_GAIN = 'linear_gain'
    SATURATION = 'saturation'
    DEADZONE = 'deadzone'
    SCALED_TANH = 'scaled_tanh'
    PW_LINEAR = 'pw_linear'
    SWITCHED = 'switched'
