"""
Test the Runge-Kutta integration and the certificate validation by simulation.
"""

import math

import numpy as np
from pytest import mark, raises as assert_raises
from scipy.linalg import expm

from npsl import (
    Certificate,
    CertificateMethod,
    CertificateStatus,
    LureSystem,
    Nonlinearity,
    NormSpec,
    Settings,
    Trajectory,
)
from npsl.exceptions import HypothesisViolationError, ShapeError
from npsl.lure import circle_halfplane, metzler_path
from npsl.simulate import (
    check_contraction,
    check_decay,
    dini_residual,
    integrate,
    integrate_batch,
    validate_certificate,
)
from npsl.transcription import normalize_sector
from tests.mother import LureSystemMother, MatrixMother


def _quick(**overrides: object) -> Settings:
    return Settings.from_sources(overrides={'trials': 2, 'horizon': 2.0, 'dt': 1e-2} | overrides)


def test_integrate_linear_decay() -> None:
    """
    Test the classical Runge-Kutta scheme on ż = diag(-1, -2)z.
    """
    system = LureSystem(A=[[-1.0, 0.0], [0.0, -2.0]], B=[0, 0], C=[0, 0], sector_hi=1)
    trajectory = integrate(system, Nonlinearity.linear_gain(0.0), z0=[1.0, 1.0], T=1.0, dt=1e-3)

    assert len(trajectory) == 1001
    assert np.allclose(trajectory.zs[-1], [math.exp(-1), math.exp(-2)], rtol=0, atol=1e-12)
    assert np.allclose(trajectory.zdots[0], [-1.0, -2.0])


def test_integrate_fourth_order_convergence() -> None:
    """
    Test that halving the step cuts the error against the matrix exponential by about 16.
    """
    A = np.array([[-1.0, 2.0], [-2.0, -1.0]])
    system = LureSystem(A=A, B=[0, 0], C=[0, 0], sector_hi=1)
    z0 = np.array([1.0, 0.5])
    exact = expm(A) @ z0

    errors = [
        float(np.linalg.norm(integrate(system, Nonlinearity.linear_gain(0.0), z0, T=1.0, dt=dt).zs[-1] - exact))
        for dt in (0.1, 0.05)
    ]

    assert 8.0 <= errors[0] / errors[1] <= 32.0


def test_integrate_records_outputs() -> None:
    """
    Test that y = Cz and w = φ(y) are recorded at every sample.
    """
    system = LureSystemMother.scalar(kappa=2.0)
    trajectory = integrate(system, Nonlinearity.saturation(level=0.5, gain=2.0), z0=[1.0], T=0.1, dt=0.05)

    assert trajectory.ys[0].tolist() == [1.0]
    assert trajectory.ws[0].tolist() == [0.5]
    assert trajectory.zdots[0].tolist() == [-0.5]


def test_integrate_invalid_arguments() -> None:
    """
    Test the step, horizon and initial state checks.
    """
    system = LureSystemMother.scalar()
    phi = Nonlinearity.linear_gain(0.5)

    with assert_raises(ValueError):
        integrate(system, phi, z0=[1.0], T=1.0, dt=0.0)

    with assert_raises(ValueError):
        integrate(system, phi, z0=[1.0], T=0.01, dt=0.1)

    with assert_raises(ShapeError):
        integrate_batch(system, phi, z0s=np.ones((2, 3)), T=1.0, dt=0.1)


def test_integrate_blow_up() -> None:
    """
    Test that a diverging trajectory is truncated and flagged.
    """
    system = LureSystem(A=[[100.0]], B=[0], C=[0], sector_hi=1)
    trajectory = integrate(system, Nonlinearity.linear_gain(0.0), z0=[1.0], T=5.0, dt=1e-2)

    assert trajectory.blew_up
    assert len(trajectory) < 501
    assert np.all(np.isfinite(trajectory.zs))
    assert check_decay(trajectory, NormSpec(p=2), 0.0) == math.inf


@mark.parametrize(
    'system, phi',
    [
        (
            LureSystem(A=[[-3.0]], B=[1], C=[1], sector_lo=1, sector_hi=3),
            Nonlinearity.saturation(1.0, 2.0).shifted(1.0),
        ),
        (LureSystem(A=[[-3.0]], B=[1], C=[1], sector_lo=-math.inf, sector_hi=2), Nonlinearity.scaled_tanh(1.5)),
    ],
)
def test_integrate_normalized_system_reproduces_states(system: LureSystem, phi: Nonlinearity) -> None:
    """
    Test that the normalized system driven by the original nonlinearity has the original states.
    """
    original = integrate(system, phi, z0=[2.0], T=2.0, dt=1e-2)
    normalized = integrate(normalize_sector(system), phi, z0=[2.0], T=2.0, dt=1e-2)

    assert np.allclose(original.zs, normalized.zs, rtol=0, atol=1e-12)
    assert np.allclose(original.ws, normalized.ws, rtol=0, atol=1e-12)


def test_integrate_batch_matches_single_runs() -> None:
    """
    Test that a batch integrates every row as a separate run would.
    """
    system = LureSystemMother.create(dimension=3, kappa=1.0)
    phi = Nonlinearity.scaled_tanh(1.0)
    starts = MatrixMother.create(rows=3, columns=3)

    batch = integrate_batch(system, phi, starts, T=1.0, dt=1e-2)

    for row, trajectory in zip(starts, batch, strict=True):
        assert np.allclose(trajectory.zs, integrate(system, phi, row, T=1.0, dt=1e-2).zs, rtol=0, atol=1e-12)


@mark.parametrize('c, expected', [(1.0, 1.0), (0.5, 1.0), (0.0, 1.0), (2.0, math.e)])
def test_check_decay(c: float, expected: float) -> None:
    """
    Test the decay ratio of z(t) = e^{-t} z(0).
    """
    system = LureSystem(A=[[-1.0]], B=[0], C=[0], sector_hi=1)
    trajectory = integrate(system, Nonlinearity.linear_gain(0.0), z0=[3.0], T=1.0, dt=1e-3)

    assert abs(check_decay(trajectory, NormSpec(p=1), c) - expected) < 1e-9


def test_check_decay_zero_state() -> None:
    """
    Test that a zero initial state gives ratio 0.
    """
    trajectory = integrate(LureSystemMother.scalar(), Nonlinearity.linear_gain(0.5), z0=[0.0], T=1.0, dt=0.1)

    assert check_decay(trajectory, NormSpec(p=2), 1.0) == 0.0


def test_check_contraction() -> None:
    """
    Test the contraction ratio of a linear loop and its degenerate cases.
    """
    system = LureSystem(A=[[-2.0]], B=[1], C=[1], sector_hi=1)
    phi = Nonlinearity.linear_gain(1.0)
    first = integrate(system, phi, z0=[1.0], T=1.0, dt=1e-3)
    second = integrate(system, phi, z0=[-1.0], T=1.0, dt=1e-3)

    assert abs(check_contraction(first, second, NormSpec(p=2), 1.0) - 1.0) < 1e-9
    assert check_contraction(first, first, NormSpec(p=2), 1.0) == 0.0

    with assert_raises(ShapeError):
        check_contraction(first, integrate(system, phi, z0=[1.0], T=0.5, dt=1e-3), NormSpec(p=2), 1.0)


@mark.parametrize('p', [1.0, 2.0, 4.0, math.inf])
def test_dini_residual_small(p: float) -> None:
    """
    Test that the recorded vector field matches the growth of ‖z‖² away from kinks.
    """
    system = LureSystem(A=[[-1.0, 2.0], [-2.0, -1.0]], B=[1, 0], C=[1, 0], sector_hi=1)
    trajectory = integrate(system, Nonlinearity.scaled_tanh(1.0), z0=[1.0, 0.5], T=2.0, dt=1e-3)

    assert dini_residual(trajectory, NormSpec(p=p)) < 1e-4


def test_dini_residual_single_sample() -> None:
    """
    Test that fewer than two samples give residual 0.
    """
    single = Trajectory(ts=[0.0], zs=[[1.0]], ws=[[0.5]], ys=[[1.0]])

    assert dini_residual(single, NormSpec(p=2)) == 0.0


@mark.integration_testing
def test_validate_certificate_metzler() -> None:
    """
    Test that the in-class nonlinearities respect a Metzler certificate of the positive system.
    """
    certificate = metzler_path(LureSystemMother.positive(), p=1, c=0.2)
    rows = validate_certificate(certificate, settings=_quick())

    assert len(rows) == 10
    assert all(row.passed for row in rows)
    assert all(row.contraction is not None for row in rows)
    assert [row.trial for row in rows[:2]] == [0, 1]


@mark.integration_testing
def test_validate_certificate_threads_agree() -> None:
    """
    Test that the worker pool gives the same rows as a sequential run.
    """
    certificate = metzler_path(LureSystemMother.positive(), p=1, c=0.2)

    assert validate_certificate(certificate, settings=_quick(threads=2)) == validate_certificate(
        certificate,
        settings=_quick(),
    )


def test_validate_certificate_sector_only_member() -> None:
    """
    Test that a nonlinearity without slope bounds gets no contraction ratio.
    """
    certificate = metzler_path(LureSystemMother.positive(), p=1, c=0.2)
    phi = Nonlinearity.switched([Nonlinearity.linear_gain(1.0), Nonlinearity.linear_gain(4.0)], [0.5])
    sector_only = Nonlinearity(phi.kind, lambda t, y: phi(t, y), sector=phi.sector, slope=None)

    rows = validate_certificate(certificate, [sector_only], settings=_quick())

    assert all(row.contraction is None for row in rows)
    assert all(row.passed for row in rows)


@mark.parametrize('system', [LureSystemMother.scalar(kappa=0.9), LureSystemMother.positive(kappa=5.0)])
def test_validate_certificate_circle_decay_only(system: LureSystem) -> None:
    """
    Test that a circle certificate is simulated in its Lyapunov norm, with decay ratios only.
    """
    rows = validate_certificate(circle_halfplane(system), settings=_quick())

    assert rows
    assert all(row.contraction is None for row in rows)
    assert all(row.passed for row in rows)


def test_validate_certificate_refusals() -> None:
    """
    Test that circle certificates without a weight and out-of-class nonlinearities are refused.
    """
    weightless = Certificate(
        CertificateMethod.CIRCLE,
        LureSystemMother.scalar(),
        p=2,
        tau=[],
        c=0,
        status=CertificateStatus.CERTIFIED_SAMPLED,
    )
    with assert_raises(HypothesisViolationError):
        validate_certificate(weightless, settings=_quick())

    certificate = metzler_path(LureSystemMother.positive(), p=1, c=0.2)
    with assert_raises(HypothesisViolationError):
        validate_certificate(certificate, [Nonlinearity.linear_gain(10.0)], settings=_quick())
