"""
This module contains the JobSpec class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .certificate_method import CertificateMethod
from .core_linalg import Matrix
from .nonlinearity import Nonlinearity
from .settings import Settings

DEFAULT_PATHS = (
    CertificateMethod.LP_DUAL,
    CertificateMethod.L2_SCHUR,
    CertificateMethod.L2_SYMMETRIZATION,
    CertificateMethod.CIRCLE,
    CertificateMethod.METZLER,
)


@dataclass(frozen=True, slots=True)
class JobSpec:
    """
    Everything one command line run needs besides the input file itself: norm selections, certification paths, rate
    search, simulation nonlinearities and the merged settings.

    Example:
    ```python
    from npsl.parser import parse_job

    job = parse_job({'norms': [1, 'inf'], 'rate_search': True, 'dt': 0.01})
    print(job.norms, job.rate_search, job.settings.dt)
    # >>> (1.0, inf) True 0.01
    ```
    """

    input: str | None = None
    command: str | None = None
    certificate: str | None = None
    norms: tuple[float, ...] = (1.0, 2.0, math.inf)
    weight: Matrix | None = None
    paths: tuple[CertificateMethod, ...] = DEFAULT_PATHS
    rate: float = 0.0
    rate_search: bool = False
    nonlinearities: tuple[Nonlinearity, ...] = ()
    settings: Settings = field(default_factory=Settings.defaults)
