"""
Certification paths for absolute stability and contractivity of Lur'e systems.

Every path normalizes the sector first and answers with a `Certificate`; hypotheses that do not hold give a refused
certificate naming the hypothesis, and paths that run without finding a certificate give a failed one. Issued
certificates are re-verified from their stored fields before they are returned.
"""

import logging
import math
from itertools import product
from typing import Any, NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import solve_continuous_are

from .certificate import Certificate, side_condition
from .certificate_method import CertificateMethod
from .certificate_status import CertificateStatus
from .core_linalg import (
    Matrix,
    Vector,
    abs_entrywise,
    as_matrix,
    eig_sym,
    is_irreducible,
    metzler_majorant,
    perron_pair,
    spd_power,
    spectral_abscissa,
    symmetric_part,
)
from .exceptions import HypothesisViolationError, ShapeError
from .lure_system import LureSystem
from .norm_spec import NormSpec
from .pairings import log_norm
from .scalar_search import golden_section
from .settings import Settings
from .slemma import solve_dual
from .transcription import build_forms, frequency_peak, normalize_sector, schur_value

logger = logging.getLogger(__name__)

LOG_TAU_RANGE = (-30.0, 30.0)
LMI_TOL = 1e-10
DEBUG_GRID = 50
RICCATI_ATTEMPTS = 6

SIDE_CONDITION = 'requires ϰ‖CR⁻¹‖∞ < 1'
REVERIFY_FAILED = 'stored certificate does not re-verify'


class RateResult(NamedTuple):
    """
    Largest certified contraction rate and the certificate issued at it (failed when no rate is certified).
    """

    c_star: float
    certificate: Certificate


class SymmetrizationTests(NamedTuple):
    """
    The three equivalent ℓ2 conditions: strict Schur feasibility, negative definiteness of Aˢ + κ(BC)ˢ on [0, ϰ]
    and the symmetrized norm test, with their margins (negative means the condition holds) in `details`.
    """

    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    details: dict[str, Any]


def _extended_weight(system: LureSystem, weight: ArrayLike | None) -> Matrix | None:
    """
    Extended weight diag(R, I) from a state weight, or the weight itself when it already has size d+m.
    """
    if weight is None:
        return None

    matrix = as_matrix(weight, name='weight', square=True)
    d, m = system.state_dimension, system.channel_count
    if matrix.shape[0] == d + m:
        return matrix

    if matrix.shape[0] != d:
        raise ShapeError(f'Weight must be <<<{d}>>> or <<<{d + m}>>> square, got <<<{matrix.shape}>>>.')

    extended = np.eye(d + m)
    extended[:d, :d] = matrix
    return extended


def _state_spec(system: LureSystem, p: float, weight: Matrix | None) -> NormSpec:
    d = system.state_dimension
    return NormSpec(p=p, weight=None if weight is None else weight[:d, :d])


def _checked(certificate: Certificate, settings: Settings) -> Certificate:
    """
    Downgrade a certified certificate that does not re-verify to failed.
    """
    if not certificate.status.is_certified or certificate.verify(slack=settings.reverify_slack, settings=settings):
        return certificate

    logger.warning('%s certificate failed re-verification', certificate.method.value)
    return Certificate.failed(certificate.method, certificate.system, certificate.p, REVERIFY_FAILED, c=certificate.c)


def certify_lp_dual(
    system: LureSystem,
    p: float,
    weight: ArrayLike | None = None,
    c: float = 0.0,
    settings: Settings | None = None,
) -> Certificate:
    """
    Certify rate c by minimizing μ_{p,R̃}(P(τ)) over τ ≥ 0 with the S-Lemma dual; certified iff the minimum is ≤ 0.

    Fails fast when the necessary condition μ_{p,R}(A) ≤ -c does not hold. For p = inf the transcription of the sector
    constraint is only one-directional and needs ϰ‖CR⁻¹‖∞ < 1.

    Args:
        system (LureSystem): Any valid system, normalized here.
        p (float): 1, 2 or inf.
        weight (ArrayLike | None, optional): State weight R (d×d) or extended weight diag(R, D). Default to None.
        c (float, optional): Rate. Default to 0.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Returns:
        Certificate: The outcome, with the dual multipliers when certified.

    Example:
    ```python
    from npsl import LureSystem
    from npsl.lure import certify_lp_dual

    certificate = certify_lp_dual(LureSystem(A=[[-2.0]], B=[1], C=[1], sector_hi=1), p=2)
    print(certificate.status.value)
    # >>> certified_exact
    ```
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    method = CertificateMethod.LP_DUAL

    if p not in (1, 2, math.inf):
        return Certificate.refused(method, normalized, p, reason='requires p ∈ {1, 2, ∞}', c=c)

    extended = _extended_weight(normalized, weight)
    state_measure = log_norm(normalized.A, _state_spec(normalized, p, extended))
    if state_measure > -c + settings.certify_tol:
        return Certificate.failed(method, normalized, p, 'requires μ(A) ≤ −c', c=c, mu_A=state_measure)

    if math.isinf(p) and side_condition(normalized, extended) >= 1:
        return Certificate.refused(method, normalized, p, reason=SIDE_CONDITION, c=c)

    spec = NormSpec(p=p, weight=extended)
    dual = solve_dual(build_forms(normalized, c, spec=spec), settings=settings)
    diagnostics = {'beta': dual.beta, 'dual_status': dual.status.value, 'iterations': dual.iterations}
    logger.debug('lp dual p=%g c=%.6e beta=%.6e', p, c, dual.beta)

    if dual.beta > settings.certify_tol:
        return Certificate.failed(method, normalized, p, 'no τ ≥ 0 with μ(P(τ)) ≤ 0', c=c, **diagnostics)

    certificate = Certificate(
        method=method,
        system=normalized,
        p=p,
        tau=dual.tau,
        c=c,
        status=CertificateStatus.CERTIFIED_EXACT,
        weight=extended,
        diagnostics=diagnostics,
    )
    return _checked(certificate, settings)


def max_certified_rate(
    system: LureSystem,
    p: float,
    weight: ArrayLike | None = None,
    settings: Settings | None = None,
) -> RateResult:
    """
    Largest rate certified by `certify_lp_dual`, by bisection on c ∈ [0, -μ_{p,R}(A)] down to the rate tolerance.

    Args:
        system (LureSystem): Any valid system.
        p (float): 1, 2 or inf.
        weight (ArrayLike | None, optional): State or extended weight. Default to None.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Returns:
        RateResult: c* and the certificate at c* (c* = 0 with the failed certificate when c = 0 is not certified).
    """
    settings = settings or Settings.defaults()
    at_zero = certify_lp_dual(system, p, weight, c=0.0, settings=settings)
    if not at_zero.status.is_certified:
        return RateResult(c_star=0.0, certificate=at_zero)

    normalized = at_zero.system
    upper = max(-log_norm(normalized.A, _state_spec(normalized, p, _extended_weight(normalized, weight))), 0.0)
    at_upper = certify_lp_dual(system, p, weight, c=upper, settings=settings)
    if at_upper.status.is_certified:
        return RateResult(c_star=upper, certificate=at_upper)

    lower, best = 0.0, at_zero
    while upper - lower > settings.rate_tol:
        middle = (lower + upper) / 2
        candidate = certify_lp_dual(system, p, weight, c=middle, settings=settings)
        if candidate.status.is_certified:
            lower, best = middle, candidate
        else:
            upper = middle

    logger.debug('max certified rate p=%g: %.10f', p, lower)
    return RateResult(c_star=lower, certificate=best)


def _schur_minimum(system: LureSystem, c: float) -> tuple[float, float]:
    """
    Minimize λ_max of the Schur-complement matrix over log τ; returns (τ, value).
    """
    found = golden_section(lambda s: schur_value(system, math.exp(s), c), *LOG_TAU_RANGE, tol=1e-12, max_iter=400)
    return math.exp(found.x), found.value


def _scalar_hypotheses(system: LureSystem) -> str | None:
    if not system.is_scalar_channel:
        return 'requires a single nonlinearity channel'

    if math.isinf(system.sector_hi[0]):
        return 'requires ϰ < ∞'

    return None


def certify_l2_schur(system: LureSystem, c: float = 0.0, settings: Settings | None = None) -> Certificate:
    """
    Euclidean certificate through the Schur complement: some τ > 0 with
    λ_max(Aˢ + cI + (ϰ/4τ)(B + τCᵀ)(B + τCᵀ)ᵀ) ≤ 0, searched by golden section over log τ ∈ [-30, 30].

    Args:
        system (LureSystem): Single-channel system with finite ϰ.
        c (float, optional): Rate. Default to 0.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Returns:
        Certificate: The outcome.
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    method = CertificateMethod.L2_SCHUR

    reason = _scalar_hypotheses(normalized)
    if reason is not None:
        return Certificate.refused(method, normalized, 2, reason=reason, c=c)

    tau, value = _schur_minimum(normalized, c)
    if value > settings.certify_tol:
        return Certificate.failed(method, normalized, 2, 'no τ > 0 makes the Schur complement ⪯ 0', c=c, schur=value)

    certificate = Certificate(
        method=method,
        system=normalized,
        p=2,
        tau=[tau],
        c=c,
        status=CertificateStatus.CERTIFIED_EXACT,
        diagnostics={'schur': value},
    )
    return _checked(certificate, settings)


def l2_symmetrization_tests(system: LureSystem, settings: Settings | None = None) -> SymmetrizationTests:
    """
    Evaluate the three equivalent Euclidean conditions for a single channel with finite ϰ.

    - (i) strict Schur feasibility: min over τ > 0 of the Schur-complement eigenvalue is negative;
    - (ii) 𝒜(κ) = Aˢ + κ(BC)ˢ ≺ 0 for κ ∈ [0, ϰ], checked at both ends since λ_max(𝒜(κ)) is convex in κ;
    - (iii) 𝒜(ϰ) ≺ 0 and, with S = (-𝒜(ϰ))^{-1/2}, B̃ = SB and C̃ = CS: ‖B̃‖‖C̃‖ - C̃B̃ ≤ 2ϰ⁻¹.

    Args:
        system (LureSystem): Single-channel system with finite ϰ.
        settings (Settings | None, optional): `debug_checks` adds a dense grid check of (ii). Default to
        `Settings.defaults()`.

    Raises:
        HypothesisViolationError: For multi-channel systems or ϰ = inf.

    Returns:
        SymmetrizationTests: The three verdicts and their margins.
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    reason = _scalar_hypotheses(normalized)
    if reason is not None:
        raise HypothesisViolationError(hypothesis=reason)

    kappa = float(normalized.sector_hi[0])
    sym_a = symmetric_part(normalized.A)
    sym_bc = symmetric_part(np.outer(normalized.B[:, 0], normalized.C[0]))

    tau, margin_i = _schur_minimum(normalized, 0.0)
    edges = [float(eig_sym(sym_a + k * sym_bc).values[0]) for k in (0.0, kappa)]
    margin_ii = max(edges)
    details: dict[str, Any] = {'tau_schur': tau, 'margin_i': margin_i, 'margin_ii': margin_ii}

    if settings.debug_checks:
        grid = max(float(eig_sym(sym_a + k * sym_bc).values[0]) for k in np.linspace(0, kappa, DEBUG_GRID))
        details['margin_ii_grid'] = grid
        if (grid < 0) != (margin_ii < 0):
            logger.warning('endpoint and grid checks disagree: %.3e vs %.3e', margin_ii, grid)

    cond_iii = False
    if edges[1] < 0:
        root = spd_power(-(sym_a + kappa * sym_bc), -0.5)
        b_tilde, c_tilde = root @ normalized.B[:, 0], normalized.C[0] @ root
        norms = float(np.linalg.norm(b_tilde) * np.linalg.norm(c_tilde))
        margin_iii = norms - float(c_tilde @ b_tilde) - 2 / kappa
        cond_iii = margin_iii <= 0
        details['margin_iii'] = margin_iii
        norm_c = float(np.linalg.norm(c_tilde))
        if norm_c > 0:
            details['tau_symmetrization'] = float(np.linalg.norm(b_tilde)) / norm_c
    else:
        details['reason_iii'] = '𝒜(ϰ) is not negative definite'

    return SymmetrizationTests(cond_i=margin_i < 0, cond_ii=margin_ii < 0, cond_iii=cond_iii, details=details)


def certify_l2_symmetrization(system: LureSystem, settings: Settings | None = None) -> Certificate:
    """
    Euclidean certificate from the symmetrized norm test with the multiplier τ = ‖B̃‖/‖C̃‖ (the Schur minimizer when
    that ratio is degenerate).

    Args:
        system (LureSystem): Single-channel system with finite ϰ.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Returns:
        Certificate: The outcome at rate 0.
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    method = CertificateMethod.L2_SYMMETRIZATION

    reason = _scalar_hypotheses(normalized)
    if reason is not None:
        return Certificate.refused(method, normalized, 2, reason=reason)

    tests = l2_symmetrization_tests(normalized, settings)
    if not tests.cond_iii:
        return Certificate.failed(method, normalized, 2, 'requires ‖B̃‖‖C̃‖ − C̃B̃ ≤ 2ϰ⁻¹', **tests.details)

    tau = tests.details.get('tau_symmetrization', 0.0)
    if not 0 < tau < math.inf or schur_value(normalized, tau) > settings.certify_tol:
        tau = tests.details['tau_schur']

    certificate = Certificate(
        method=method,
        system=normalized,
        p=2,
        tau=[tau],
        c=0.0,
        status=CertificateStatus.CERTIFIED_EXACT,
        diagnostics=tests.details,
    )
    return _checked(certificate, settings)


def circle_halfplane(system: LureSystem, settings: Settings | None = None) -> Certificate:
    """
    Circle criterion for the sector [0, ϰ], where the circle degenerates to a half-plane:
    max_ω Re C(iωI - A)⁻¹B < ϰ⁻¹ with A Hurwitz. The maximum comes from a frequency grid, so the status is
    `certified_sampled`; controllability and observability are assumed, not checked.

    Args:
        system (LureSystem): Single-channel system with finite ϰ.
        settings (Settings | None, optional): Grid size and strict margin. Default to `Settings.defaults()`.

    Returns:
        Certificate: The outcome at rate 0.

    Example:
    ```python
    from npsl import LureSystem
    from npsl.lure import circle_halfplane

    print(circle_halfplane(LureSystem(A=[[-1.0]], B=[1], C=[1], sector_hi=0.9)).status.value)
    # >>> certified_sampled
    ```
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    method = CertificateMethod.CIRCLE

    reason = _scalar_hypotheses(normalized)
    if reason is not None:
        return Certificate.refused(method, normalized, 2, reason=reason)

    if spectral_abscissa(normalized.A) >= 0:
        return Certificate.refused(method, normalized, 2, reason='requires A Hurwitz')

    peak = frequency_peak(normalized, points=settings.frequency_points)
    kappa = float(normalized.sector_hi[0])
    diagnostics = {'omega': peak.omega, 'peak': peak.value, 'assumption': 'controllable and observable (not checked)'}

    if peak.value >= 1 / kappa - settings.frequency_margin:
        return Certificate.failed(method, normalized, 2, 'requires max_ω Re C(iωI−A)⁻¹B < ϰ⁻¹', **diagnostics)

    H = circle_lyapunov(normalized, gap=1 / kappa - peak.value)
    weight = None
    if H is not None:
        d = normalized.state_dimension
        weight = np.eye(d + 1)
        weight[:d, :d] = spd_power(H, 0.5)
    diagnostics['lyapunov_weight'] = weight is not None

    certificate = Certificate(
        method=method,
        system=normalized,
        p=2,
        tau=[],
        c=0.0,
        status=CertificateStatus.CERTIFIED_SAMPLED,
        weight=weight,
        diagnostics=diagnostics,
    )
    return _checked(certificate, settings)


def circle_lyapunov(system: LureSystem, gap: float) -> Matrix | None:
    """
    Quadratic Lyapunov matrix H behind a circle certificate, from the Riccati equation
    HA + AᵀH + (ϰ/2)(HB + Cᵀ)(HB + Cᵀ)ᵀ + εI = 0, the Schur form of the LMI of `verify_lmi` with τ = 1.

    The frequency condition holds with the given gap, so the equation has a stabilizing solution for small ε; ε starts
    at gap/10 and shrinks tenfold per attempt. A Hurwitz makes every solution positive definite. The solution is
    accepted only if `verify_lmi` confirms it.

    Args:
        system (LureSystem): Normalized single-channel system with finite ϰ and A Hurwitz.
        gap (float): ϰ⁻¹ - max_ω Re C(iωI - A)⁻¹B, positive.

    Returns:
        Matrix | None: H, or None when no attempt verifies.
    """
    A, B, C = system.A, system.B, system.C
    kappa = float(system.sector_hi[0])
    d = system.state_dimension

    epsilon = gap / 10
    for _ in range(RICCATI_ATTEMPTS):
        try:
            solution = solve_continuous_are(A, B, epsilon * np.eye(d), np.array([[-2 / kappa]]), s=C.T)
        except (np.linalg.LinAlgError, ValueError) as error:
            logger.debug('Riccati solve failed at ε=%.1e: %s', epsilon, error)
            epsilon /= 10
            continue

        if np.all(np.isfinite(solution)) and verify_lmi(system, symmetric_part(solution), 1.0):
            return symmetric_part(solution)

        epsilon /= 10

    logger.warning('no Lyapunov matrix found for the circle certificate')
    return None


def verify_lmi(system: LureSystem, H: ArrayLike, tau: float, c: float = 0.0) -> bool:
    """
    Check H ≻ 0 and [[HA + AᵀH + 2cH, HB + τCᵀ], [(HB + τCᵀ)ᵀ, -2τϰ⁻¹]] ⪯ 0 up to 1e-10.

    Args:
        system (LureSystem): Single-channel system (normalized here).
        H (ArrayLike): Symmetric d×d matrix.
        tau (float): Multiplier.
        c (float, optional): Rate. Default to 0.

    Raises:
        ShapeError: If H is not symmetric or has the wrong size.
        HypothesisViolationError: For multi-channel systems.

    Returns:
        bool: Whether both conditions hold.
    """
    normalized = normalize_sector(system)
    if not normalized.is_scalar_channel:
        raise HypothesisViolationError(hypothesis='requires a single nonlinearity channel')

    matrix = as_matrix(H, name='H', square=True)
    d = normalized.state_dimension
    if matrix.shape[0] != d:
        raise ShapeError(f'H must be <<<{d}>>>×<<<{d}>>>, got <<<{matrix.shape}>>>.')

    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=1e-12):
        raise ShapeError('H must be symmetric.')

    A, B, C = normalized.A, normalized.B, normalized.C
    kappa = float(normalized.sector_hi[0])
    inverse_kappa = 0.0 if math.isinf(kappa) else 1 / kappa

    block = np.zeros((d + 1, d + 1))
    block[:d, :d] = matrix @ A + A.T @ matrix + 2 * c * matrix
    block[:d, d] = matrix @ B[:, 0] + tau * C[0]
    block[d, :d] = block[:d, d]
    block[d, d] = -2 * tau * inverse_kappa

    return bool(eig_sym(block).values[0] <= LMI_TOL and eig_sym(matrix).values[-1] > 0)


def certify_lmi(
    system: LureSystem,
    H: ArrayLike,
    tau: float,
    c: float = 0.0,
    settings: Settings | None = None,
) -> Certificate:
    """
    Turn a verified (H, τ, c) into a Euclidean certificate with the extended weight diag(H^{1/2}, 1).

    Args:
        system (LureSystem): Single-channel system.
        H (ArrayLike): Symmetric positive definite d×d matrix.
        tau (float): Multiplier.
        c (float, optional): Rate. Default to 0.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Returns:
        Certificate: The outcome.
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    method = CertificateMethod.LMI_VERIFY

    if not normalized.is_scalar_channel:
        return Certificate.refused(method, normalized, 2, reason='requires a single nonlinearity channel', c=c)

    if tau < 0 or not verify_lmi(normalized, H, tau, c):
        return Certificate.failed(method, normalized, 2, 'the LMI does not hold for (H, τ, c)', c=c)

    d = normalized.state_dimension
    weight = np.eye(d + 1)
    weight[:d, :d] = spd_power(H, 0.5)

    certificate = Certificate(
        method=method,
        system=normalized,
        p=2,
        tau=[tau],
        c=c,
        status=CertificateStatus.CERTIFIED_EXACT,
        weight=weight,
    )
    return _checked(certificate, settings)


def metzler_bound(system: LureSystem) -> Matrix:
    """
    Metzler matrix 𝔄(ϰ) = ⌈A⌉ + |B| diag(ϰ) |C| of a normalized system with finite sectors.
    """
    gains = np.diag(system.sector_hi)
    return metzler_majorant(system.A) + abs_entrywise(system.B) @ gains @ abs_entrywise(system.C)


def perron_weight(pair_left: ArrayLike, pair_right: ArrayLike, p: float) -> Vector:
    """
    Diagonal of the Perron weight for ℓp: w_i^{1/p} v_i^{-1/q}, that is w for p = 1 and 1/v for p = inf, rescaled
    so that the last entry is 1.
    """
    left = np.asarray(pair_left, dtype=np.float64)
    right = np.asarray(pair_right, dtype=np.float64)
    inverse_p = 0.0 if math.isinf(p) else 1 / p
    diagonal = left**inverse_p * right ** (inverse_p - 1)

    return np.asarray(diagonal / diagonal[-1], dtype=np.float64)


def _metzler_certificate(normalized: LureSystem, p: float, c: float, settings: Settings) -> Certificate:
    """
    Perron-weighted certificate at rate c, without the spectral abscissa pre-check.
    """
    method = CertificateMethod.METZLER
    m = normalized.channel_count
    tau = np.full(m, settings.metzler_tau)
    majorant = metzler_majorant(build_forms(normalized, c).combined(tau))

    perturbed = False
    if not is_irreducible(majorant):
        if settings.strict_irreducible:
            return Certificate.refused(method, normalized, p, reason='requires ⌈P(τ)⌉ irreducible', c=c)
        logger.warning('⌈P(τ)⌉ is reducible, filling its zero pattern with %.1e', settings.reducible_perturbation)
        zeros = majorant == 0
        np.fill_diagonal(zeros, False)
        majorant = majorant + settings.reducible_perturbation * zeros
        perturbed = True

    pair = perron_pair(majorant, tol=settings.perron_tol, max_iter=settings.perron_max_iter)
    weight = np.diag(perron_weight(pair.left, pair.right, p))
    diagnostics = {'perron_eigenvalue': pair.eigenvalue, 'perturbed': perturbed}

    if math.isinf(p) and side_condition(normalized, weight) >= 1:
        return Certificate.refused(method, normalized, p, reason=SIDE_CONDITION, c=c)

    exact = p in (1, 2, math.inf)
    certificate = Certificate(
        method=method,
        system=normalized,
        p=p,
        tau=tau,
        c=c,
        status=CertificateStatus.CERTIFIED_EXACT if exact else CertificateStatus.CERTIFIED_SAMPLED,
        weight=weight,
        diagnostics=diagnostics,
    )
    return _checked(certificate, settings)


def metzler_path(system: LureSystem, p: float, c: float = 0.0, settings: Settings | None = None) -> Certificate:
    """
    Diagonal-weight certificate from the Metzler majorant.

    With 𝔄(ϰ) = ⌈A⌉ + |B| diag(ϰ) |C| and α(𝔄) < -c, the majorant ⌈P(τ)⌉ at τ = 1 is Metzler and Hurwitz, and the
    diagonal weight built from its Perron vectors makes μ_{p,R̃}(P(τ)) equal its Perron eigenvalue for p ∈ {1, inf}
    (and bounded by it otherwise). The certificate is re-verified; for p ∉ {1, 2, inf} only by sampling.
    α(𝔄) < -c is also necessary for diagonal weights when p ∈ {1, inf}.

    Args:
        system (LureSystem): System with finite ϰ on every channel.
        p (float): Any exponent in [1, inf].
        c (float, optional): Rate. Default to 0.
        settings (Settings | None, optional): τ, perturbation and tolerances. Default to `Settings.defaults()`.

    Returns:
        Certificate: The outcome.

    Example:
    ```python
    from npsl import LureSystem
    from npsl.lure import metzler_path

    system = LureSystem(A=[[-2, 1], [0, -3]], B=[0, 1], C=[1, 0], sector_hi=5)
    print(metzler_path(system, p=1, c=0.2).status.value)
    # >>> certified_exact
    ```
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    method = CertificateMethod.METZLER

    if np.any(np.isinf(normalized.sector_hi)):
        return Certificate.refused(method, normalized, p, reason='requires ϰ < ∞', c=c)

    alpha = spectral_abscissa(metzler_bound(normalized))
    if alpha >= -c - settings.certify_tol:
        return Certificate.failed(method, normalized, p, 'requires α(𝔄(ϰ)) < −c', c=c, alpha_metzler=alpha)

    return _metzler_certificate(normalized, p, c, settings)


def metzler_max_rate(system: LureSystem, p: float = 1.0, settings: Settings | None = None) -> RateResult:
    """
    Exact best rate of the Metzler path, c* = -α(𝔄(ϰ)), with the Perron-weighted certificate issued at c*.

    Args:
        system (LureSystem): System with finite ϰ on every channel.
        p (float, optional): Exponent. Default to 1.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Returns:
        RateResult: c* (0 with a failed or refused certificate when 𝔄(ϰ) is not Hurwitz).
    """
    settings = settings or Settings.defaults()
    normalized = normalize_sector(system)
    if np.any(np.isinf(normalized.sector_hi)):
        return RateResult(c_star=0.0, certificate=metzler_path(normalized, p, 0.0, settings))

    c_star = -spectral_abscissa(metzler_bound(normalized))
    if c_star <= settings.certify_tol:
        return RateResult(c_star=0.0, certificate=metzler_path(normalized, p, 0.0, settings))

    return RateResult(c_star=c_star, certificate=_metzler_certificate(normalized, p, c_star, settings))


def aizerman_scan(system: LureSystem, grid_size: int | None = None, settings: Settings | None = None) -> bool:
    """
    Check that every linear loop A + B diag(k) C with k in the sector is Hurwitz on a uniform grid including the
    endpoints. Multi-channel sectors are scanned on every vertex of the gain box and along its diagonal.

    Args:
        system (LureSystem): System with finite ζ and ϰ, as given (before normalization).
        grid_size (int | None, optional): Grid points. Default to the configured value.
        settings (Settings | None, optional): Grid size and tolerance. Default to `Settings.defaults()`.

    Raises:
        HypothesisViolationError: If some sector bound is infinite.

    Returns:
        bool: Whether all scanned loops are Hurwitz.

    Example:
    ```python
    from npsl import LureSystem
    from npsl.lure import aizerman_scan

    system = LureSystem(A=[[-2, 1], [0, -3]], B=[0, 1], C=[1, 0], sector_hi=6)
    print(aizerman_scan(system))
    # >>> False
    ```
    """
    settings = settings or Settings.defaults()
    lo, hi = system.sector_lo, system.sector_hi
    if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
        raise HypothesisViolationError(hypothesis='requires finite ζ and ϰ')

    points = grid_size or settings.aizerman_grid
    gains = [lo + t * (hi - lo) for t in np.linspace(0.0, 1.0, points)]
    if not system.is_scalar_channel:
        gains.extend(np.array(vertex) for vertex in product(*zip(lo, hi, strict=True)))

    for k in gains:
        abscissa = spectral_abscissa(system.closed_loop(k))
        if abscissa >= -settings.certify_tol:
            logger.debug('loop with gains %s has spectral abscissa %.3e', np.round(k, 6).tolist(), abscissa)
            return False

    return True
