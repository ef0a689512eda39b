"""
Test the dense linear algebra helpers.
"""

import numpy as np
from hypothesis import given, settings as hypothesis_settings, strategies as st
from hypothesis.extra.numpy import arrays
from pytest import mark, raises as assert_raises

from npsl.core_linalg import (
    abs_entrywise,
    as_matrix,
    as_vector,
    characteristic_polynomial,
    eig_sym,
    hadamard,
    inverse,
    is_irreducible,
    is_metzler,
    metzler_majorant,
    perron_pair,
    solve_linear,
    spd_power,
    spectral_abscissa,
)
from npsl.exceptions import ReducibleMatrixError, ShapeError, SingularMatrixError
from tests.mother import MatrixMother

entries = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)


@mark.parametrize(
    'data',
    [
        [],
        [1, 2],
        [[1, float('nan')]],
        [[1, 2], [3]],
    ],
)
def test_as_matrix_rejects_invalid_data(data: object) -> None:
    """
    Test that empty, one dimensional, non-finite or ragged data is rejected.
    """
    with assert_raises(ShapeError):
        as_matrix(data)


def test_as_matrix_square_required() -> None:
    """
    Test the square requirement.
    """
    with assert_raises(ShapeError):
        as_matrix([[1, 2, 3], [4, 5, 6]], square=True)


def test_as_vector_length() -> None:
    """
    Test the length requirement.
    """
    assert as_vector([1, 2]).tolist() == [1.0, 2.0]

    with assert_raises(ShapeError):
        as_vector([1, 2], length=3)


def test_metzler_majorant() -> None:
    """
    Test that the diagonal is kept and off-diagonal entries become absolute values.
    """
    assert metzler_majorant([[-2, -1], [3, -4]]).tolist() == [[-2.0, 1.0], [3.0, -4.0]]


@mark.parametrize(
    'matrix, expected',
    [
        ([[-1, 0], [2, -3]], True),
        ([[-1, -0.1], [2, -3]], False),
        ([[5]], True),
    ],
)
def test_is_metzler(matrix: list[list[float]], expected: bool) -> None:
    """
    Test the Metzler sign structure check.
    """
    assert is_metzler(matrix) is expected


def test_is_metzler_structural_tolerance() -> None:
    """
    Test that the structural tolerance admits tiny negative entries.
    """
    assert is_metzler([[-1, -1e-12], [1, -1]], tol_struct=1e-10)


@mark.parametrize(
    'matrix, expected',
    [
        ([[-1, 1], [1, -1]], True),
        ([[-1, 1], [0, -1]], False),
        ([[-1]], True),
    ],
)
def test_is_irreducible(matrix: list[list[float]], expected: bool) -> None:
    """
    Test irreducibility through strong connectivity.
    """
    assert is_irreducible(matrix) is expected


def test_spectral_abscissa() -> None:
    """
    Test the spectral abscissa of a matrix with real eigenvalues.
    """
    assert abs(spectral_abscissa([[-2, 1], [5, -3]]) - (-5 + np.sqrt(21)) / 2) < 1e-12


@mark.property_testing
@hypothesis_settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_spectral_abscissa_shift(seed: int) -> None:
    """
    Test that α(A + cI) = α(A) + c.
    """
    rng = np.random.default_rng(seed)
    size = int(rng.integers(1, 6))
    matrix = rng.standard_normal((size, size))
    c = float(rng.uniform(-5, 5))

    assert abs(spectral_abscissa(matrix + c * np.eye(size)) - spectral_abscissa(matrix) - c) < 1e-9


@mark.parametrize('size', [1, 2, 3])
def test_characteristic_polynomial_matches_eigenvalues(size: int) -> None:
    """
    Test that the closed-form characteristic polynomial vanishes at the eigenvalues.
    """
    matrix = MatrixMother.create(rows=size)
    coefficients = characteristic_polynomial(matrix)

    for eigenvalue in np.linalg.eigvals(matrix):
        assert abs(np.polyval(coefficients, eigenvalue)) < 1e-8 * max(1.0, abs(eigenvalue) ** size)


def test_characteristic_polynomial_too_large() -> None:
    """
    Test that only sizes up to 3 are supported.
    """
    with assert_raises(ShapeError):
        characteristic_polynomial(np.eye(4))


def test_perron_pair_symmetric() -> None:
    """
    Test the Perron pair of a symmetric Metzler matrix.
    """
    pair = perron_pair([[-1, 1], [1, -1]])

    assert abs(pair.eigenvalue) < 1e-10
    assert np.allclose(pair.right, [0.5, 0.5])
    assert np.allclose(pair.left, [0.5, 0.5])


def test_perron_pair_random_metzler() -> None:
    """
    Test that the Perron vectors are positive eigenvectors for the spectral abscissa.
    """
    matrix = MatrixMother.metzler()
    pair = perron_pair(matrix)

    assert np.all(pair.right > 0)
    assert np.all(pair.left > 0)
    assert abs(pair.eigenvalue - spectral_abscissa(matrix)) < 1e-8
    assert np.allclose(matrix @ pair.right, pair.eigenvalue * pair.right, atol=1e-8)
    assert np.allclose(pair.left @ matrix, pair.eigenvalue * pair.left, atol=1e-8)


def test_perron_pair_reducible() -> None:
    """
    Test that reducible matrices are rejected.
    """
    with assert_raises(ReducibleMatrixError):
        perron_pair([[-1, 1], [0, -2]])


def test_perron_pair_not_metzler() -> None:
    """
    Test that a negative off-diagonal entry is rejected.
    """
    with assert_raises(ShapeError):
        perron_pair([[-1, -1], [1, -2]])


def test_eig_sym_descending() -> None:
    """
    Test that eigenvalues come in descending order with orthonormal eigenvectors.
    """
    matrix = MatrixMother.symmetric(size=4)
    values, vectors = eig_sym(matrix)

    assert np.all(np.diff(values) <= 0)
    assert np.allclose(vectors.T @ vectors, np.eye(4), atol=1e-10)
    assert np.allclose(vectors @ np.diag(values) @ vectors.T, matrix, atol=1e-10)


def test_eig_sym_rejects_asymmetric() -> None:
    """
    Test that an asymmetric matrix is rejected.
    """
    with assert_raises(ShapeError):
        eig_sym([[1, 2], [0, 1]])


def test_spd_power() -> None:
    """
    Test that the square root of an SPD matrix squares back to it.
    """
    matrix = np.array([[4.0, 1.0], [1.0, 3.0]])
    root = spd_power(matrix, 0.5)

    assert np.allclose(root @ root, matrix)


def test_spd_power_not_definite() -> None:
    """
    Test that indefinite matrices are rejected.
    """
    with assert_raises(SingularMatrixError):
        spd_power([[1, 0], [0, -1]], 0.5)


def test_solve_linear_and_inverse() -> None:
    """
    Test the checked solver and inverse.
    """
    matrix = [[2.0, 1.0], [1.0, 3.0]]

    assert np.allclose(solve_linear(matrix, [3, 4]), [1, 1])
    assert np.allclose(inverse(matrix) @ np.asarray(matrix), np.eye(2))


def test_solve_linear_singular() -> None:
    """
    Test that singular systems are rejected.
    """
    with assert_raises(SingularMatrixError):
        solve_linear([[1, 2], [2, 4]], [1, 2])


def test_hadamard_shapes() -> None:
    """
    Test the entrywise product and its shape check.
    """
    assert hadamard([[1, 2]], [[3, 4]]).tolist() == [[3.0, 8.0]]
    assert abs_entrywise([[1, -2]]).tolist() == [[1.0, 2.0]]

    with assert_raises(ShapeError):
        hadamard([[1, 2]], [[1], [2]])


@mark.property_testing
@hypothesis_settings(max_examples=50, deadline=None)
@given(matrix=arrays(np.float64, (3, 3), elements=entries))
def test_metzler_majorant_is_metzler(matrix: np.ndarray) -> None:
    """
    Test that the majorant is Metzler and dominates the matrix entrywise.
    """
    majorant = metzler_majorant(matrix)

    assert is_metzler(majorant)
    assert np.all(majorant >= matrix)
