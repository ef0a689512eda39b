"""
Test the Nonlinearity class.
"""

import math

import numpy as np
from pytest import mark, raises as assert_raises

from npsl import Nonlinearity, NonlinearityKind
from npsl.exceptions import NonlinearityDeclarationError
from tests.mother import NonlinearityMother


def test_nonlinearity_saturation() -> None:
    """
    Test the saturation response and its declarations.
    """
    phi = Nonlinearity.saturation(level=1.0, gain=2.0)

    assert phi(0.0, [-3.0, 0.25, 3.0]).tolist() == [-1.0, 0.5, 1.0]
    assert phi.sector == (0.0, 2.0)
    assert phi.slope == (0.0, 2.0)
    assert phi.kind is NonlinearityKind.SATURATION
    assert phi.label == 'saturation(level=1,gain=2)'
    assert repr(phi) == 'Nonlinearity(kind=saturation, sector=(0.0, 2.0), slope=(0.0, 2.0))'


def test_nonlinearity_deadzone() -> None:
    """
    Test the deadzone response.
    """
    assert Nonlinearity.deadzone(width=0.5)(0.0, [-2.0, 0.3, 2.0]).tolist() == [-1.5, 0.0, 1.5]


def test_nonlinearity_scaled_tanh() -> None:
    """
    Test the scaled tanh response.
    """
    assert np.allclose(Nonlinearity.scaled_tanh(3.0)(0.0, [1.0]), [3 * math.tanh(1.0)])


@mark.parametrize(
    'build',
    [
        lambda: Nonlinearity.saturation(level=0.0),
        lambda: Nonlinearity.saturation(level=1.0, gain=-1.0),
        lambda: Nonlinearity.deadzone(width=-1.0),
        lambda: Nonlinearity.scaled_tanh(0.0),
        lambda: Nonlinearity.pw_linear([(1.0, 1.0)]),
        lambda: Nonlinearity.pw_linear([(1.0, 1.0), (1.0, 2.0)]),
        lambda: Nonlinearity.switched([Nonlinearity.linear_gain(1.0)], [1.0]),
        lambda: Nonlinearity.switched([Nonlinearity.linear_gain(1.0)] * 3, [2.0, 1.0]),
    ],
)
def test_nonlinearity_invalid_parameters(build: object) -> None:
    """
    Test that invalid parameters raise ValueError.
    """
    with assert_raises(ValueError):
        build()  # type: ignore[operator]


def test_nonlinearity_false_declaration() -> None:
    """
    Test that a response outside its declared sector is rejected on construction.
    """
    with assert_raises(NonlinearityDeclarationError, match='sector'):
        Nonlinearity(NonlinearityKind.LINEAR_GAIN, lambda t, y: 2 * y, sector=(0.0, 1.0), slope=None)

    with assert_raises(NonlinearityDeclarationError, match='slope'):
        Nonlinearity(NonlinearityKind.SCALED_TANH, lambda t, y: np.tanh(4 * y), sector=(0.0, 4.0), slope=(0.0, 1.0))


def test_nonlinearity_pw_linear() -> None:
    """
    Test interpolation, linear extension and the bounds read off the table.
    """
    phi = Nonlinearity.pw_linear([(1.0, 1.0), (-1.0, -2.0), (0.0, 0.0)])

    assert phi(0.0, [-2.0, -0.5, 0.5, 3.0]).tolist() == [-4.0, -1.0, 0.5, 3.0]
    assert phi.sector == (1.0, 2.0)
    assert phi.slope == (1.0, 2.0)


def test_nonlinearity_pw_linear_off_origin() -> None:
    """
    Test that a table whose interpolant misses the origin is rejected.
    """
    with assert_raises(NonlinearityDeclarationError):
        Nonlinearity.pw_linear([(-1.0, 0.0), (1.0, 1.0)])


def test_nonlinearity_switched() -> None:
    """
    Test that the active member follows the switching instants and the declarations are their hull.
    """
    phi = Nonlinearity.switched([Nonlinearity.linear_gain(0.0), Nonlinearity.saturation(1.0, 2.0)], [1.0])

    assert phi(0.5, [3.0]).tolist() == [0.0]
    assert phi(1.5, [3.0]).tolist() == [1.0]
    assert phi.sector == (0.0, 2.0)
    assert phi.slope == (0.0, 2.0)
    assert phi.params['times'] == [1.0]


def test_nonlinearity_shifted() -> None:
    """
    Test φ + offset·y and the shifted declarations.
    """
    phi = Nonlinearity.saturation(level=1.0).shifted(-1.0)

    assert phi(0.0, [3.0]).tolist() == [-2.0]
    assert phi.sector == (-1.0, 0.0)
    assert phi.fits_sector(-1.0, 0.0)
    assert phi.params['offset'] == -1.0


@mark.parametrize(
    'zeta, kappa, hull',
    [
        (0.0, 2.0, (0.0, 2.0)),
        (1.0, 3.0, (1.0, 3.0)),
        (0.0, math.inf, (0.0, 10.0)),
        (-math.inf, 2.0, (-8.0, 2.0)),
    ],
)
def test_nonlinearity_in_class(zeta: float, kappa: float, hull: tuple[float, float]) -> None:
    """
    Test that the five members fit the requested class, with a stand-in for an infinite bound.
    """
    members = Nonlinearity.in_class(zeta, kappa)

    assert len(members) == 5
    assert all(member.fits_sector(*hull) for member in members)
    assert all(member.fits_slope(*hull) for member in members)
    assert members[0].sector == (hull[1], hull[1])


def test_nonlinearity_fits_slope_without_declaration() -> None:
    """
    Test that a nonlinearity without slope bounds never fits a slope class.
    """
    phi = Nonlinearity(NonlinearityKind.LINEAR_GAIN, lambda t, y: y, sector=(0.0, 1.0), slope=None)

    assert phi.fits_sector(0.0, 1.0)
    assert not phi.fits_slope(-math.inf, math.inf)


def test_nonlinearity_random_member_fits() -> None:
    """
    Test that a random slope-restricted member fits its class.
    """
    phi = NonlinearityMother.create(kappa=2.0)

    assert phi.fits_sector(0.0, 2.0)
    assert phi.fits_slope(0.0, 2.0)


def test_nonlinearity_to_primitives() -> None:
    """
    Test the plain representation.
    """
    assert Nonlinearity.deadzone(width=0.5, slope=2.0).to_primitives() == {
        'kind': 'deadzone',
        'params': {'width': 0.5, 'slope': 2.0},
        'sector': [0.0, 2.0],
        'slope': [0.0, 2.0],
    }
