"""
Fixed-step simulation of Lur'e systems and empirical checks of the decay and contraction bounds a certificate
promises.
"""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from .certificate import Certificate
from .certificate_method import CertificateMethod
from .core_linalg import Matrix, as_vector
from .exceptions import HypothesisViolationError, ShapeError
from .lure_system import LureSystem
from .nonlinearity import Nonlinearity
from .norm_spec import NormSpec
from .pairings import pairing_rows, vector_norms
from .settings import Settings
from .trajectory import Trajectory

logger = logging.getLogger(__name__)

BLOW_UP_LEVEL = 1e100


class ValidationRow(NamedTuple):
    """
    Decay and contraction ratios of one nonlinearity and one pair of initial states; contraction is None when the
    nonlinearity is not slope restricted in the certified class.
    """

    nonlinearity: str
    trial: int
    decay: float
    contraction: float | None
    passed: bool


def _field(system: LureSystem, phi: Nonlinearity, t: float, Z: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """
    Vector field of a batch of states given as rows, with the nonlinearity outputs and the system outputs.
    """
    Y = Z @ system.C.T
    W = phi(t, Y)
    V = system.substitute_input(W, Y)

    return Z @ system.A.T + V @ system.B.T, W, Y


def integrate_batch(
    system: LureSystem,
    phi: Nonlinearity,
    z0s: ArrayLike,
    T: float | None = None,
    dt: float | None = None,
    settings: Settings | None = None,
) -> list[Trajectory]:
    """
    Integrate ż = Az + B w', y = Cz, w = φ(t, y) for many initial states in one classical Runge-Kutta sweep, where w'
    is w after the system's recorded input substitutions (so a normalized system reproduces the original states).

    A row whose state stops being finite (or exceeds 1e100 in magnitude) is truncated at its last good sample and
    flagged as blown up.

    Args:
        system (LureSystem): System, normalized or not.
        phi (Nonlinearity): Nonlinearity applied to every channel.
        z0s (ArrayLike): Initial states as rows, shape (k, d).
        T (float | None, optional): Horizon. Default to `settings.horizon`.
        dt (float | None, optional): Step. Default to `settings.dt`.
        settings (Settings | None, optional): Defaults source. Default to `Settings.defaults()`.

    Raises:
        ValueError: If dt ≤ 0 or T < dt.
        ShapeError: If the initial states do not have d columns.

    Returns:
        list[Trajectory]: One trajectory per initial state.
    """
    settings = settings or Settings.defaults()
    horizon = settings.horizon if T is None else float(T)
    step = settings.dt if dt is None else float(dt)
    if not step > 0 or horizon < step:
        raise ValueError(f'Integration needs dt > 0 and T >= dt, got T=<<<{horizon}>>>, dt=<<<{step}>>>.')

    Z = np.atleast_2d(np.asarray(z0s, dtype=np.float64)).copy()
    k, d = Z.shape
    if d != system.state_dimension:
        raise ShapeError(f'Initial states have <<<{d}>>> columns, the system has <<<{system.state_dimension}>>>.')

    n = int(round(horizon / step))
    ts = step * np.arange(n + 1)
    m = system.channel_count
    zs, zdots = np.empty((n + 1, k, d)), np.empty((n + 1, k, d))
    ws, ys = np.empty((n + 1, k, m)), np.empty((n + 1, k, m))
    last = np.full(k, n)

    with np.errstate(over='ignore', invalid='ignore'):
        for j in range(n + 1):
            t = ts[j]
            K1, W, Y = _field(system, phi, t, Z)
            zs[j], zdots[j], ws[j], ys[j] = Z, K1, W, Y

            bad = ~np.all(np.isfinite(Z) & (np.abs(Z) < BLOW_UP_LEVEL), axis=1) & (last == n)
            last[bad] = j - 1
            if j == n or np.all(last < n):
                break

            K2 = _field(system, phi, t + step / 2, Z + step / 2 * K1)[0]
            K3 = _field(system, phi, t + step / 2, Z + step / 2 * K2)[0]
            K4 = _field(system, phi, t + step, Z + step * K3)[0]
            Z = Z + step * (K1 + 2 * K2 + 2 * K3 + K4) / 6

    trajectories = []
    for i in range(k):
        stop = max(int(last[i]), 0) + 1
        if last[i] < n:
            logger.warning('trajectory %d blew up after t=%.6g, truncated', i, ts[stop - 1])

        trajectories.append(
            Trajectory(
                ts=ts[:stop],
                zs=zs[:stop, i],
                ws=ws[:stop, i],
                ys=ys[:stop, i],
                zdots=zdots[:stop, i],
                blew_up=bool(last[i] < n),
            ),
        )

    logger.debug('integrated %d trajectories, %d steps of %.3g', k, n, step)
    return trajectories


def integrate(
    system: LureSystem,
    phi: Nonlinearity,
    z0: ArrayLike,
    T: float | None = None,
    dt: float | None = None,
    settings: Settings | None = None,
) -> Trajectory:
    """
    Integrate one initial state, see `integrate_batch`.

    Example:
    ```python
    from npsl import LureSystem, Nonlinearity
    from npsl.simulate import integrate

    system = LureSystem(A=[[-1.0, 0.0], [0.0, -2.0]], B=[0, 0], C=[0, 0], sector_hi=1)
    trajectory = integrate(system, Nonlinearity.linear_gain(0.0), z0=[1.0, 1.0], T=1.0, dt=1e-3)
    print(trajectory.zs[-1].round(6))
    # >>> [0.367879 0.135335]
    ```
    """
    state = as_vector(z0, name='z0', length=system.state_dimension)

    return integrate_batch(system, phi, state[None, :], T=T, dt=dt, settings=settings)[0]


def check_decay(trajectory: Trajectory, spec: NormSpec, c: float) -> float:
    """
    Largest value of ‖z(t)‖e^{ct}/‖z(0)‖ along the trajectory; at most 1 (up to discretization) when the decay
    bound at rate c holds.

    Args:
        trajectory (Trajectory): Trajectory.
        spec (NormSpec): State norm.
        c (float): Rate.

    Returns:
        float: The ratio, 0 when z(0) = 0 and inf for a blown up trajectory.
    """
    norms = vector_norms(trajectory.zs, spec)
    if norms[0] == 0:
        return 0.0

    if trajectory.blew_up:
        return math.inf

    return float(np.max(norms * np.exp(c * trajectory.ts)) / norms[0])


def check_contraction(first: Trajectory, second: Trajectory, spec: NormSpec, c: float) -> float:
    """
    Largest value of ‖z₁(t) - z₂(t)‖e^{ct}/‖z₁(0) - z₂(0)‖.

    Args:
        first (Trajectory): First trajectory.
        second (Trajectory): Second trajectory on the same grid.
        spec (NormSpec): State norm.
        c (float): Rate.

    Raises:
        ShapeError: If the grids differ.

    Returns:
        float: The ratio, 0 for identical initial states and inf if either trajectory blew up.
    """
    if not first.same_grid(second):
        raise ShapeError('Contraction check needs trajectories on the same time grid.')

    norms = vector_norms(first.zs - second.zs, spec)
    if norms[0] == 0:
        return 0.0

    if first.blew_up or second.blew_up:
        return math.inf

    return float(np.max(norms * np.exp(c * first.ts)) / norms[0])


def _kink_steps(points: Matrix, p: float) -> np.ndarray:
    """
    Steps [j, j+1] across which the norm may fail to be differentiable.
    """
    if p == 1:
        signs = np.sign(points)
        return np.any((signs[1:] != signs[:-1]) | (signs[1:] == 0) | (signs[:-1] == 0), axis=1)

    if math.isinf(p):
        magnitude = np.abs(points)
        active = magnitude == magnitude.max(axis=1, keepdims=True)
        signs = np.sign(points)
        return np.any(active[1:] != active[:-1], axis=1) | np.any(active[:-1] & (signs[1:] != signs[:-1]), axis=1)

    return np.zeros(points.shape[0] - 1, dtype=bool)


def dini_residual(trajectory: Trajectory, spec: NormSpec) -> float:
    """
    Largest deviation, over steps, between the forward difference of V = ‖z‖² and the step average of 2⟦ż, z⟧
    evaluated with the recorded vector field. Steps where the norm has a kink (a coordinate changes sign for p=1, the
    active set changes for p=inf) are skipped, since the derivative formula holds almost everywhere only.

    Args:
        trajectory (Trajectory): Trajectory with recorded derivatives.
        spec (NormSpec): State norm.

    Returns:
        float: The residual, 0 with fewer than two samples or when every step is skipped.
    """
    if len(trajectory) < 2:
        return 0.0

    points = spec.apply(trajectory.zs)
    squares = vector_norms(trajectory.zs, spec) ** 2
    pairing = 2 * pairing_rows(spec.apply(trajectory.zdots), points, spec.p)

    derivative = np.diff(squares) / np.diff(trajectory.ts)
    average = (pairing[1:] + pairing[:-1]) / 2
    residual = np.abs(derivative - average)
    residual = residual[~_kink_steps(points, spec.p)]

    return float(np.max(residual)) if residual.size else 0.0


def _validation_class(certificate: Certificate) -> tuple[float, float]:
    lo, hi = certificate.system.original_sector()
    return float(np.max(lo)), float(np.min(hi))


def _validate_one(
    certificate: Certificate,
    phi: Nonlinearity,
    starts: Matrix,
    settings: Settings,
) -> list[ValidationRow]:
    spec = certificate.state_spec
    trajectories = integrate_batch(certificate.system, phi, starts, settings=settings)
    zeta, kappa = _validation_class(certificate)
    limit = 1 + settings.validation_tol

    rows = []
    for trial in range(starts.shape[0] // 2):
        first, second = trajectories[2 * trial], trajectories[2 * trial + 1]
        decay = max(check_decay(first, spec, certificate.c), check_decay(second, spec, certificate.c))
        contraction = None
        if certificate.method is not CertificateMethod.CIRCLE and phi.fits_slope(zeta, kappa):
            contraction = check_contraction(first, second, spec, certificate.c)

        passed = decay <= limit and (contraction is None or contraction <= limit)
        rows.append(ValidationRow(phi.label, trial, decay, contraction, passed))

    return rows


def validate_certificate(
    certificate: Certificate,
    nonlinearities: Sequence[Nonlinearity] | None = None,
    settings: Settings | None = None,
) -> list[ValidationRow]:
    """
    Simulate the certified system with in-class nonlinearities from random pairs of initial states and measure the
    decay ratio of each trajectory and the contraction ratio of each pair in the certificate's norm and rate.

    Args:
        certificate (Certificate): Certificate with a state norm. Circle certificates need their Lyapunov weight and
        are checked for decay only.
        nonlinearities (Sequence[Nonlinearity] | None, optional): Nonlinearities to try. Default to
        `Nonlinearity.in_class` of the certified sector.
        settings (Settings | None, optional): Trials, horizon, step, tolerance, seed and threads. Default to
        `Settings.defaults()`.

    Raises:
        HypothesisViolationError: For circle certificates without a weight or nonlinearities outside the certified
        sector.

    Returns:
        list[ValidationRow]: One row per nonlinearity and trial, in input order.
    """
    settings = settings or Settings.defaults()
    if certificate.method is CertificateMethod.CIRCLE and certificate.weight is None:
        raise HypothesisViolationError(
            hypothesis='requires a certificate with a norm',
            detail='This circle certificate carries no Lyapunov weight to measure decay in.',
        )

    zeta, kappa = _validation_class(certificate)
    members = list(nonlinearities) if nonlinearities is not None else Nonlinearity.in_class(zeta, kappa)
    for phi in members:
        if not phi.fits_sector(zeta, kappa):
            raise HypothesisViolationError(
                hypothesis='requires a nonlinearity in the certified sector',
                detail=f'{phi.label} declares {phi.sector}, certified [{zeta}, {kappa}].',
            )

    rng = np.random.default_rng(settings.seed)
    starts = rng.standard_normal((len(members), 2 * settings.trials, certificate.system.state_dimension))

    if settings.threads > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            futures = [
                pool.submit(_validate_one, certificate, phi, block, settings)
                for phi, block in zip(members, starts, strict=True)
            ]
            batches = [future.result() for future in futures]
    else:
        batches = [_validate_one(certificate, phi, block, settings) for phi, block in zip(members, starts, strict=True)]

    rows = [row for batch in batches for row in batch]
    failures = sum(not row.passed for row in rows)
    if failures:
        logger.warning('%d of %d validation rows exceed the bound', failures, len(rows))

    return rows
