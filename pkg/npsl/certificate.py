"""
This module contains the Certificate class.
"""

from __future__ import annotations

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

import logging
import math
from collections.abc import Mapping
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from .certificate_method import CertificateMethod
from .certificate_status import CertificateStatus
from .core_linalg import Matrix, Vector, as_matrix, spectral_abscissa
from .exceptions import InputError
from .lure_system import InputSubstitution, LureSystem
from .norm_spec import NormSpec
from .pairings import log_norm, log_norm_sampled
from .settings import Settings
from .transcription import build_forms, frequency_peak, schur_value

logger = logging.getLogger(__name__)


def side_condition(system: LureSystem, weight: Matrix | None) -> float:
    """
    Induced ∞-norm of D·diag(ϰ)·C·R⁻¹ for the extended weight diag(R, D); the ℓ∞ paths need it below 1.

    Args:
        system (LureSystem): Normalized system.
        weight (Matrix | None): Extended weight of size d+m, None for the identity.

    Returns:
        float: The norm, inf when some channel with a nonzero output row has ϰ = inf.
    """
    d = system.state_dimension
    C = system.C
    if weight is None:
        head_inverse, channel_weights = np.eye(d), np.ones(system.channel_count)
    else:
        head_inverse, channel_weights = np.linalg.inv(weight[:d, :d]), np.diag(weight)[d:]

    rows = C @ head_inverse
    sums = np.abs(rows).sum(axis=1)
    gains = system.sector_hi * channel_weights
    scaled = np.where(sums == 0, 0.0, gains * np.where(sums == 0, 1.0, sums))

    return float(np.max(scaled))


class Certificate:
    """
    Outcome of one certification path for a normalized Lur'e system: the method, the norm exponent, the extended
    weight R̃ = diag(R, D) on [z; w], the multipliers τ, the rate c and the status, plus a free-form diagnostics
    report. A certified status means every trajectory satisfies ‖z(t)‖_{p,R} ≤ e^{-ct}‖z(0)‖_{p,R} for every
    nonlinearity in the sector (and contracts at rate c for slope-restricted ones). Certificates are immutable and
    re-verify from their stored fields alone.

    Example:
    ```python
    from npsl import Certificate, CertificateMethod, CertificateStatus, LureSystem

    system = LureSystem(A=[[-2.0]], B=[1], C=[1], sector_hi=1)
    certificate = Certificate(
        method=CertificateMethod.LP_DUAL,
        system=system,
        p=2,
        tau=[1],
        c=0,
        status=CertificateStatus.CERTIFIED_EXACT,
    )
    print(certificate.verify())
    # >>> True
    ```
    """

    __method: CertificateMethod
    __system: LureSystem
    __p: float
    __weight: Matrix | None
    __tau: Vector
    __c: float
    __status: CertificateStatus
    __diagnostics: dict[str, Any]

    def __init__(
        self,
        method: CertificateMethod,
        system: LureSystem,
        p: float,
        tau: ArrayLike,
        c: float,
        status: CertificateStatus,
        weight: ArrayLike | None = None,
        diagnostics: Mapping[str, Any] | None = None,
    ) -> None:
        """
        Certificate constructor.

        Args:
            method (CertificateMethod): Path that produced it.
            system (LureSystem): Normalized system it speaks about.
            p (float): Norm exponent.
            tau (ArrayLike): Multipliers, one per channel (empty when the path has none).
            c (float): Rate, nonnegative.
            status (CertificateStatus): Outcome.
            weight (ArrayLike | None, optional): Extended weight of size d+m. Default to None (identity).
            diagnostics (Mapping[str, Any] | None, optional): Report entries. Default to empty.

        Raises:
            ValueError: If c or some multiplier is negative, or the weight has the wrong size.
        """
        if c < 0:
            raise ValueError(f'Rate must be nonnegative, got <<<{c}>>>.')

        multipliers = np.atleast_1d(np.asarray(tau, dtype=np.float64))
        if np.any(multipliers < 0):
            raise ValueError('Multipliers must be nonnegative.')

        size = system.state_dimension + system.channel_count
        matrix = None if weight is None else as_matrix(weight, name='weight', square=True)
        if matrix is not None and matrix.shape[0] != size:
            raise ValueError(f'Weight must be <<<{size}>>>×<<<{size}>>>, got <<<{matrix.shape}>>>.')

        multipliers.flags.writeable = False
        if matrix is not None:
            matrix.flags.writeable = False

        self.__method = method
        self.__system = system
        self.__p = float(p)
        self.__weight = matrix
        self.__tau = multipliers
        self.__c = float(c)
        self.__status = status
        self.__diagnostics = dict(diagnostics or {})

    @classmethod
    def refused(
        cls,
        method: CertificateMethod,
        system: LureSystem,
        p: float,
        reason: str,
        c: float = 0.0,
    ) -> Certificate:
        """
        Refusal: a hypothesis of the path does not hold. The reason names it.
        """
        logger.info('%s refused: %s', method.value, reason)
        return cls(method, system, p, tau=[], c=c, status=CertificateStatus.REFUSED, diagnostics={'reason': reason})

    @classmethod
    def failed(
        cls,
        method: CertificateMethod,
        system: LureSystem,
        p: float,
        reason: str,
        c: float = 0.0,
        **diagnostics: Any,
    ) -> Certificate:
        """
        Failure: the path ran and found no certificate.
        """
        logger.info('%s failed: %s', method.value, reason)
        report = {'reason': reason, **diagnostics}
        return cls(method, system, p, tau=[], c=c, status=CertificateStatus.FAILED, diagnostics=report)

    @override
    def __repr__(self) -> str:
        """
        Get string representation of Certificate.

        Returns:
            str: String representation of Certificate.
        """
        return (
            f'Certificate(method={self.__method.value}, p={self.__p:g}, c={self.__c:g}, tau={self.__tau.tolist()}, '
            f'status={self.__status.value})'
        )

    @property
    def method(self) -> CertificateMethod:
        """
        Get the certification path.

        Returns:
            CertificateMethod: The method tag.
        """
        return self.__method

    @property
    def system(self) -> LureSystem:
        """
        Get the normalized system.

        Returns:
            LureSystem: The system.
        """
        return self.__system

    @property
    def p(self) -> float:
        """
        Get the norm exponent.

        Returns:
            float: p.
        """
        return self.__p

    @property
    def weight(self) -> Matrix | None:
        """
        Get the extended weight diag(R, D), None for the identity.

        Returns:
            Matrix | None: The weight.
        """
        return self.__weight

    @property
    def state_weight(self) -> Matrix | None:
        """
        Get the state block R of the weight, the one the decay and contraction bounds are stated in.

        Returns:
            Matrix | None: R, None for the identity.
        """
        if self.__weight is None:
            return None

        d = self.__system.state_dimension
        return self.__weight[:d, :d].copy()

    @property
    def tau(self) -> Vector:
        """
        Get the multipliers.

        Returns:
            Vector: τ.
        """
        return self.__tau

    @property
    def c(self) -> float:
        """
        Get the certified rate.

        Returns:
            float: c ≥ 0.
        """
        return self.__c

    @property
    def status(self) -> CertificateStatus:
        """
        Get the status.

        Returns:
            CertificateStatus: The status.
        """
        return self.__status

    @property
    def diagnostics(self) -> dict[str, Any]:
        """
        Get the diagnostics report.

        Returns:
            dict[str, Any]: Copy of the report.
        """
        return dict(self.__diagnostics)

    @property
    def state_spec(self) -> NormSpec:
        """
        Get the norm on the state, ‖z‖_{p,R}.
        """
        return NormSpec(p=self.__p, weight=self.state_weight)

    def defining_value(self, settings: Settings | None = None) -> float:
        """
        Value of the quantity the path requires to be nonpositive (below the margin for the circle path).

        - lp_dual, metzler, lmi_verify: μ_{p,R̃}(P(τ)) at rate c (sampled lower bound for p ∉ {1, 2, inf});
        - l2_schur, l2_symmetrization: λ_max of the Schur-complement matrix;
        - circle: max_ω Re C(iωI - A)⁻¹B - ϰ⁻¹.

        Args:
            settings (Settings | None, optional): Sampling and grid budgets. Default to `Settings.defaults()`.

        Returns:
            float: The value.
        """
        settings = settings or Settings.defaults()

        if self.__method in (CertificateMethod.L2_SCHUR, CertificateMethod.L2_SYMMETRIZATION):
            return schur_value(self.__system, float(self.__tau[0]), self.__c)

        if self.__method is CertificateMethod.CIRCLE:
            kappa = float(self.__system.sector_hi[0])
            return frequency_peak(self.__system, points=settings.frequency_points).value - 1 / kappa

        family = build_forms(self.__system, self.__c)
        spec = NormSpec(p=self.__p, weight=self.__weight)
        matrix = family.combined(self.__tau)
        if spec.is_exact:
            return log_norm(matrix, spec)

        return log_norm_sampled(spec.similarity(matrix), self.__p, n_samples=settings.sampled_count, seed=settings.seed)

    def verify(self, slack: float = 1e-9, settings: Settings | None = None) -> bool:
        """
        Re-check the defining inequality of the method from the stored fields.

        Args:
            slack (float, optional): Allowed excess. Default to 1e-9.
            settings (Settings | None, optional): Sampling and grid budgets. Default to `Settings.defaults()`.

        Returns:
            bool: Whether the inequality (and the ℓ∞ side condition where it applies) holds.

        Example:
        ```python
        from npsl import Certificate, CertificateMethod, CertificateStatus, LureSystem

        system = LureSystem(A=[[-1.0]], B=[1], C=[1], sector_hi=2)
        certificate = Certificate(CertificateMethod.CIRCLE, system, p=2, tau=[], c=0, status=CertificateStatus.FAILED)
        print(certificate.verify())
        # >>> False
        ```
        """
        settings = settings or Settings.defaults()

        if self.__method is CertificateMethod.CIRCLE:
            if spectral_abscissa(self.__system.A) >= 0:
                return False
            return self.defining_value(settings) < -settings.frequency_margin

        if self.__method in (CertificateMethod.L2_SCHUR, CertificateMethod.L2_SYMMETRIZATION) and (
            self.__tau.size != 1 or self.__tau[0] <= 0
        ):
            return False

        if self.__method not in (CertificateMethod.L2_SCHUR, CertificateMethod.L2_SYMMETRIZATION) and (
            self.__tau.size != self.__system.channel_count
        ):
            return False

        if math.isinf(self.__p) and side_condition(self.__system, self.__weight) >= 1:
            return False

        value = self.defining_value(settings)
        logger.debug('%s re-verification value %.6e', self.__method.value, value)
        return value <= slack

    def to_primitives(self) -> dict[str, Any]:
        """
        Get the certificate as plain values; infinities stay floats.

        Returns:
            dict[str, Any]: Every stored field.
        """
        return {
            'method': self.__method.value,
            'system': self.__system.to_primitives(),
            'p': self.__p,
            'weight': None if self.__weight is None else self.__weight.tolist(),
            'tau': self.__tau.tolist(),
            'c': self.__c,
            'status': self.__status.value,
            'diagnostics': dict(self.__diagnostics),
        }

    @classmethod
    def from_primitives(cls, data: Mapping[str, Any]) -> Certificate:
        """
        Rebuild a certificate from `to_primitives` output (with infinities already decoded to floats).

        Args:
            data (Mapping[str, Any]): Plain values.

        Raises:
            InputError: On missing fields or unknown tags.

        Returns:
            Certificate: The certificate.
        """
        try:
            raw = data['system']
            system = LureSystem(
                A=raw['A'],
                B=raw['B'],
                C=raw['C'],
                sector_lo=raw['zeta'],
                sector_hi=raw['kappa'],
                substitutions=[InputSubstitution(**step) for step in raw.get('substitutions', [])],
            )
            return cls(
                method=CertificateMethod(data['method']),
                system=system,
                p=float(data['p']),
                tau=data['tau'],
                c=float(data['c']),
                status=CertificateStatus(data['status']),
                weight=data.get('weight'),
                diagnostics=data.get('diagnostics'),
            )
        except KeyError as error:
            raise InputError(f'Certificate is missing field <<<{error.args[0]}>>>.') from None
        except (TypeError, ValueError) as error:
            raise InputError(f'Invalid certificate: {error}') from None
