"""
Certificate method module.
"""

from enum import Enum, unique


@unique
class CertificateMethod(str, Enum):
    """
    CertificateMethod enum class, one member per certification path.

    Example:
    ```python
    from npsl import CertificateMethod

    method = CertificateMethod.LP_DUAL
    print(method.value)
    # >>> lp_dual
    ```
    """

    LP_DUAL = 'lp_dual'
    L2_SCHUR = 'l2_schur'
    L2_SYMMETRIZATION = 'l2_symmetrization'
    CIRCLE = 'circle'
    METZLER = 'metzler'
    LMI_VERIFY = 'lmi_verify'
