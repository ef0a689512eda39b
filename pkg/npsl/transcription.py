"""
Transcription of a Lur'e system into S-Lemma data: sector normalization, the forms P₀ and P_k on the stacked vector
x = [z; w], the ℓ2 Schur-complement matrix and the frequency response peak used by the circle criterion.
"""

import logging
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy import signal

from .core_linalg import Matrix, Vector, as_vector, symmetric_part
from .exceptions import HypothesisViolationError, ShapeError
from .form_family import FormFamily
from .lure_system import InputSubstitution, LureSystem
from .norm_spec import NormSpec
from .scalar_search import golden_section

logger = logging.getLogger(__name__)

FREQUENCY_RANGE = (-6.0, 6.0)


class FrequencyPeak(NamedTuple):
    """
    Largest real part of the transfer function C(iωI - A)⁻¹B found on ω ≥ 0, and where.
    """

    omega: float
    value: float


def normalize_sector(system: LureSystem) -> LureSystem:
    """
    Equivalent system whose sectors all have ζ = 0.

    Per channel i:
    - finite ζ ≠ 0: A ← A + ζ B_i C_i, ϰ ← ϰ - ζ, with w' = w - ζy;
    - ζ = -inf, ϰ finite: A ← A + ϰ B_i C_i, B_i ← -B_i, ϰ ← inf, with w' = ϰy - w.
    The substitutions are recorded so that simulating either system with the same nonlinearity gives the same
    states.

    Args:
        system (LureSystem): Any valid system.

    Returns:
        LureSystem: The normalized system.

    Example:
    ```python
    from npsl import LureSystem
    from npsl.transcription import normalize_sector

    system = normalize_sector(LureSystem(A=[[-3.0]], B=[1], C=[1], sector_lo=1, sector_hi=3))
    print(system.A, system.sector_hi)
    # >>> [[-2.]] [2.]
    ```
    """
    A, B, C = system.A, system.B, system.C
    lo, hi = system.sector_lo, system.sector_hi
    steps = list(system.substitutions)

    for i in range(system.channel_count):
        if lo[i] == 0:
            continue

        if math.isfinite(lo[i]):
            A = A + lo[i] * np.outer(B[:, i], C[i])
            hi[i] = hi[i] - lo[i]
            steps.append(InputSubstitution(channel=i, kind='shift', gain=float(lo[i])))
        else:
            A = A + hi[i] * np.outer(B[:, i], C[i])
            B[:, i] = -B[:, i]
            steps.append(InputSubstitution(channel=i, kind='flip', gain=float(hi[i])))
            hi[i] = math.inf
        lo[i] = 0.0

    return LureSystem(A=A, B=B, C=C, sector_lo=lo, sector_hi=hi, substitutions=steps)


def _require_normalized(system: LureSystem) -> None:
    if not system.is_normalized():
        raise HypothesisViolationError(hypothesis='requires ζ = 0', detail='Normalize the sector first.')


def build_forms(system: LureSystem, c: float = 0.0, spec: NormSpec | None = None) -> FormFamily:
    """
    S-Lemma family on x = [z; w] ∈ R^{d+m} for the contraction rate c.

    P₀ = [[A + cI, B], [0, 0]] turns ⟦P₀x, x⟧ ≤ 0 into the Lyapunov inequality ⟦Az + Bw, z⟧ ≤ -c‖z‖², and the k-th
    constraint form has the single nonzero row d+k equal to [-C_k | ϰ_k⁻¹ e_k] (ϰ⁻¹ = 0 for an infinite bound), so
    that ⟦P_k x, x⟧ ≤ 0 carries the sector condition w_k(ϰ_k⁻¹w_k - C_k z) ≤ 0. All levels are 0.

    Args:
        system (LureSystem): Normalized system.
        c (float, optional): Rate. Default to 0.
        spec (NormSpec | None, optional): Norm on R^{d+m}. Default to the Euclidean norm.

    Raises:
        HypothesisViolationError: If the system is not normalized.

    Returns:
        FormFamily: Family with s = m constraints.

    Example:
    ```python
    from npsl import LureSystem
    from npsl.transcription import build_forms

    family = build_forms(LureSystem(A=[[-2.0]], B=[1], C=[1], sector_hi=1))
    print(family.objective.tolist(), family.constraints[0].tolist())
    # >>> [[-2.0, 1.0], [0.0, 0.0]] [[0.0, 0.0], [-1.0, 1.0]]
    ```
    """
    _require_normalized(system)

    d, m = system.state_dimension, system.channel_count
    objective = np.zeros((d + m, d + m))
    objective[:d, :d] = system.A + c * np.eye(d)
    objective[:d, d:] = system.B

    constraints = []
    C, inverse_gains = system.C, _inverse_gains(system)
    for k in range(m):
        form = np.zeros((d + m, d + m))
        form[d + k, :d] = -C[k]
        form[d + k, d + k] = inverse_gains[k]
        constraints.append(form)

    return FormFamily(forms=[objective, *constraints], rho=np.zeros(m), spec=spec or NormSpec(p=2))


def _inverse_gains(system: LureSystem) -> Vector:
    hi = system.sector_hi
    return np.where(np.isinf(hi), 0.0, 1.0 / np.where(np.isinf(hi), 1.0, hi))


def multiplier_matrix(system: LureSystem, tau: ArrayLike, c: float = 0.0) -> Matrix:
    """
    P(τ) = P₀ - Σ τ_k P_k for the normalized system at rate c.
    """
    return build_forms(system, c).combined(tau)


def sector_product(system: LureSystem, z: ArrayLike, w: ArrayLike) -> Vector:
    """
    Per-channel sector quantity w_k(ϰ_k⁻¹w_k - C_k z), nonpositive exactly when w lies in the sector [0, ϰ] of y.

    Args:
        system (LureSystem): Normalized system.
        z (ArrayLike): State, length d.
        w (ArrayLike): Nonlinearity output, length m.

    Raises:
        HypothesisViolationError: If the system is not normalized.

    Returns:
        Vector: One value per channel.
    """
    _require_normalized(system)
    state = as_vector(z, name='z', length=system.state_dimension)
    inputs = as_vector(w, name='w', length=system.channel_count)

    return inputs * (_inverse_gains(system) * inputs - system.C @ state)


def _require_scalar_finite(system: LureSystem) -> float:
    if not system.is_scalar_channel:
        raise HypothesisViolationError(hypothesis='requires a single nonlinearity channel')

    kappa = float(system.sector_hi[0])
    if math.isinf(kappa):
        raise HypothesisViolationError(hypothesis='requires ϰ < ∞')

    return kappa


def schur_matrix(system: LureSystem, tau: float, c: float = 0.0) -> Matrix:
    """
    Aˢ + cI + (ϰ/4τ)(B + τCᵀ)(B + τCᵀ)ᵀ, the Schur complement of the ℓ2 condition λ_max(P(τ)ˢ) ≤ 0 on the w-block.

    Args:
        system (LureSystem): Normalized single-channel system with finite ϰ.
        tau (float): Positive multiplier.
        c (float, optional): Rate. Default to 0.

    Raises:
        HypothesisViolationError: For multi-channel systems, unnormalized sectors or ϰ = inf.
        ValueError: If τ is not positive.

    Returns:
        Matrix: The symmetric d×d matrix.
    """
    _require_normalized(system)
    kappa = _require_scalar_finite(system)
    if not tau > 0:
        raise ValueError(f'Multiplier must be positive, got <<<{tau}>>>.')

    column = system.B[:, 0] + tau * system.C[0]

    return symmetric_part(system.A) + c * np.eye(system.state_dimension) + kappa / (4 * tau) * np.outer(column, column)


def schur_value(system: LureSystem, tau: float, c: float = 0.0) -> float:
    """
    Largest eigenvalue of `schur_matrix`.
    """
    return float(np.linalg.eigvalsh(schur_matrix(system, tau, c))[-1])


def transfer_real(system: LureSystem, omega: float) -> float:
    """
    Re C(iωI - A)⁻¹B of a single-channel system.

    Raises:
        ShapeError: For multi-channel systems.
    """
    if not system.is_scalar_channel:
        raise ShapeError('Transfer function needs a single channel.')

    resolvent = np.linalg.solve(1j * omega * np.eye(system.state_dimension) - system.A, system.B[:, 0])

    return float(np.real(system.C[0] @ resolvent))


def frequency_peak(system: LureSystem, points: int = 2000) -> FrequencyPeak:
    """
    Maximize Re C(iωI - A)⁻¹B over ω ≥ 0: ω = 0 and a log-spaced grid on [1e-6, 1e6], then golden-section refinement
    between the neighbours of the best grid point. The real part is even in ω, so negative frequencies are skipped.

    Args:
        system (LureSystem): Single-channel system with A Hurwitz.
        points (int, optional): Grid size. Default to 2000.

    Raises:
        ShapeError: For multi-channel systems.

    Returns:
        FrequencyPeak: The best frequency and value.
    """
    if not system.is_scalar_channel:
        raise ShapeError('Frequency response peak needs a single channel.')

    d = system.state_dimension
    if not np.any(system.B) or not np.any(system.C):
        return FrequencyPeak(omega=0.0, value=0.0)

    omegas = np.concatenate([[0.0], np.logspace(*FREQUENCY_RANGE, points)])
    state_space = signal.StateSpace(system.A, system.B, system.C, np.zeros((1, 1)))
    _, response = signal.freqresp(state_space, w=omegas)
    values = np.real(np.asarray(response)).ravel()

    best = int(np.argmax(values))
    lower = omegas[max(best - 1, 0)]
    upper = omegas[min(best + 1, omegas.size - 1)]
    refined = golden_section(lambda omega: -transfer_real(system, omega), lower, upper, tol=1e-10, max_iter=200)

    peak = FrequencyPeak(omega=float(omegas[best]), value=float(values[best]))
    if -refined.value > peak.value:
        peak = FrequencyPeak(omega=refined.x, value=-refined.value)

    logger.debug('frequency peak d=%d: omega=%.6e value=%.12g', d, peak.omega, peak.value)
    return peak
