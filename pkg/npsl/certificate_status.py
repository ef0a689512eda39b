"""
Certificate status module.
"""

from enum import Enum, unique


@unique
class CertificateStatus(str, Enum):
    """
    CertificateStatus enum class.

    `certified_exact` certificates were re-verified with closed-form quantities, `certified_sampled` ones rest on a
    sampled or gridded check. `refused` means a hypothesis of the path does not hold, `failed` that the path ran but
    found no certificate.

    Example:
    ```python
    from npsl import CertificateStatus

    status = CertificateStatus.REFUSED
    print(status.is_certified)
    # >>> False
    ```
    """

    CERTIFIED_EXACT = 'certified_exact'
    CERTIFIED_SAMPLED = 'certified_sampled'
    REFUSED = 'refused'
    FAILED = 'failed'

    @property
    def is_certified(self) -> bool:
        """
        Whether a certificate was issued.

        Returns:
            bool: True for both certified statuses.
        """
        return self in (CertificateStatus.CERTIFIED_EXACT, CertificateStatus.CERTIFIED_SAMPLED)
