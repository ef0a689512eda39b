"""
Test the NormSpec class.
"""

import math

import numpy as np
from pytest import mark, raises as assert_raises

from npsl import NormSpec
from npsl.exceptions import ShapeError, SingularMatrixError, UnsupportedNormError
from npsl.pairings import conic_log_norm


@mark.parametrize(
    'p, q',
    [
        (1, math.inf),
        (2, 2),
        (math.inf, 1),
        (4, 4 / 3),
    ],
)
def test_norm_spec_conjugate_exponent(p: float, q: float) -> None:
    """
    Test that the conjugate exponent satisfies 1/p + 1/q = 1.
    """
    spec = NormSpec(p=p)

    assert spec.p == p
    assert spec.q == q


@mark.parametrize('p', [0.5, 0, -1, float('nan')])
def test_norm_spec_invalid_exponent(p: float) -> None:
    """
    Test that exponents outside [1, inf] are rejected.
    """
    with assert_raises(UnsupportedNormError):
        NormSpec(p=p)


def test_norm_spec_diagonal_weight_detection() -> None:
    """
    Test that a positive diagonal weight is detected and inverted entrywise.
    """
    spec = NormSpec(p=math.inf, weight=[[2, 0], [0, 4]])

    assert spec.diagonal_weight
    assert spec.is_weighted
    assert np.allclose(spec.weight_inverse, [[0.5, 0], [0, 0.25]])
    assert repr(spec) == 'NormSpec(p=inf, weight=diagonal)'


def test_norm_spec_full_weight() -> None:
    """
    Test that a non-diagonal weight is inverted and flagged as full.
    """
    spec = NormSpec(p=1, weight=[[1, 1], [0, 1]])

    assert not spec.diagonal_weight
    assert np.allclose(spec.weight_inverse, [[1, -1], [0, 1]])
    assert repr(spec) == 'NormSpec(p=1, weight=full)'


def test_norm_spec_declared_diagonal_mismatch() -> None:
    """
    Test that declaring a non-diagonal weight diagonal is rejected.
    """
    with assert_raises(ShapeError):
        NormSpec(p=1, weight=[[1, 1], [0, 1]], diagonal_weight=True)


def test_norm_spec_declared_full_weight() -> None:
    """
    Test that a diagonal weight declared full is treated as full, also after extension and a change of exponent.
    """
    spec = NormSpec(p=1, weight=[[2, 0], [0, 4]], diagonal_weight=False)

    assert not spec.diagonal_weight
    assert repr(spec) == 'NormSpec(p=1, weight=full)'
    assert np.allclose(spec.weight_inverse, [[0.5, 0], [0, 0.25]])
    assert not spec.extended(1).diagonal_weight
    assert not spec.with_p(math.inf).diagonal_weight
    assert not NormSpec(p=1, diagonal_weight=False).diagonal_weight
    assert spec != NormSpec(p=1, weight=[[2, 0], [0, 4]])

    with assert_raises(UnsupportedNormError):
        conic_log_norm([[-1, 1], [1, -1]], spec)


@mark.parametrize(
    'weight',
    [
        [[1, 2], [2, 4]],
        [[1, 0], [0, 1e-14]],
    ],
)
def test_norm_spec_singular_weight(weight: list[list[float]]) -> None:
    """
    Test that singular or ill-conditioned weights are rejected.
    """
    with assert_raises(SingularMatrixError):
        NormSpec(p=2, weight=weight)


def test_norm_spec_similarity() -> None:
    """
    Test that the similarity transform is RAR⁻¹.
    """
    spec = NormSpec(p=1, weight=[[2, 0], [0, 1]])

    assert np.allclose(spec.similarity([[1, 1], [1, 1]]), [[1, 2], [0.5, 1]])


def test_norm_spec_similarity_shape_mismatch() -> None:
    """
    Test that a matrix of the wrong size is rejected.
    """
    spec = NormSpec(p=1, weight=[[2, 0], [0, 1]])

    with assert_raises(ShapeError):
        spec.similarity(np.eye(3))


def test_norm_spec_apply_batch() -> None:
    """
    Test that a batch of row vectors is weighted row by row.
    """
    spec = NormSpec(p=2, weight=[[2, 0], [0, 3]])

    assert np.allclose(spec.apply([[1, 1], [1, -1]]), [[2, 3], [2, -3]])


def test_norm_spec_extended() -> None:
    """
    Test the block-diagonal extension diag(R, D).
    """
    extended = NormSpec(p=1).extended([5.0], size=2)

    assert np.allclose(extended.weight, np.diag([1, 1, 5]))
    assert extended.diagonal_weight


def test_norm_spec_extended_needs_size() -> None:
    """
    Test that extending an unweighted spec needs the state dimension.
    """
    with assert_raises(ShapeError):
        NormSpec(p=1).extended(1)


def test_norm_spec_equality_and_hash() -> None:
    """
    Test equality on exponent and weight.
    """
    first = NormSpec(p=2, weight=np.eye(2))
    second = NormSpec(p=2, weight=[[1, 0], [0, 1]])

    assert first == second
    assert hash(first) == hash(second)
    assert first != NormSpec(p=2)
    assert first != first.with_p(1)


@mark.parametrize('p, exact', [(1, True), (2, True), (math.inf, True), (3, False), (1.5, False)])
def test_norm_spec_is_exact(p: float, exact: bool) -> None:
    """
    Test which exponents have closed-form log norms.
    """
    assert NormSpec(p=p).is_exact is exact


def test_norm_spec_to_primitives() -> None:
    """
    Test the plain representation.
    """
    assert NormSpec(p=math.inf, weight=[[2, 0], [0, 1]]).to_primitives() == {
        'p': math.inf,
        'weight': [[2.0, 0.0], [0.0, 1.0]],
    }
