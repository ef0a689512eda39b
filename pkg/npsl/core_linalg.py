"""
Dense small-matrix primitives: Metzler structure, spectral abscissa, symmetric eigenvalues, Perron pairs and checked
linear solves.
"""

import logging
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import ConvergenceError, ReducibleMatrixError, ShapeError, SingularMatrixError

logger = logging.getLogger(__name__)

Matrix = NDArray[np.float64]
Vector = NDArray[np.float64]

SYMMETRY_TOL = 1e-12
SOLVE_RESIDUAL_TOL = 1e-9


class PerronPair(NamedTuple):
    """
    Dominant eigenvalue of an irreducible Metzler matrix with its strictly positive right and left eigenvectors, both
    normalized to unit ℓ1 norm.
    """

    eigenvalue: float
    right: Vector
    left: Vector


class SymmetricEigen(NamedTuple):
    """
    Spectral decomposition of a symmetric matrix, eigenvalues in descending order and eigenvectors as columns.
    """

    values: Vector
    vectors: Matrix


def as_matrix(data: ArrayLike, name: str = 'matrix', square: bool = False) -> Matrix:
    """
    Convert data to a finite, non-empty, two dimensional float array.

    Args:
        data (ArrayLike): Matrix entries.
        name (str, optional): Name used in error messages. Default to 'matrix'.
        square (bool, optional): Require a square matrix. Default to False.

    Raises:
        ShapeError: If the data is not a finite non-empty matrix (or not square when required).

    Returns:
        Matrix: A float64 copy of the data.
    """
    try:
        matrix = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as error:
        raise ShapeError(f'<<<{name}>>> is not a numeric matrix: {error}') from None

    if matrix.ndim != 2 or matrix.size == 0:
        raise ShapeError(f'<<<{name}>>> must be a non-empty matrix, got shape <<<{matrix.shape}>>>.')

    if not np.all(np.isfinite(matrix)):
        raise ShapeError(f'<<<{name}>>> has non-finite entries.')

    if square and matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f'<<<{name}>>> must be square, got shape <<<{matrix.shape}>>>.')

    return matrix


def as_vector(data: ArrayLike, name: str = 'vector', length: int | None = None) -> Vector:
    """
    Convert data to a finite, non-empty, one dimensional float array.

    Args:
        data (ArrayLike): Vector entries.
        name (str, optional): Name used in error messages. Default to 'vector'.
        length (int | None, optional): Required length. Default to None.

    Raises:
        ShapeError: If the data is not a finite vector of the required length.

    Returns:
        Vector: A float64 copy of the data.
    """
    try:
        vector = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as error:
        raise ShapeError(f'<<<{name}>>> is not a numeric vector: {error}') from None

    if vector.ndim != 1 or vector.size == 0:
        raise ShapeError(f'<<<{name}>>> must be a non-empty vector, got shape <<<{vector.shape}>>>.')

    if not np.all(np.isfinite(vector)):
        raise ShapeError(f'<<<{name}>>> has non-finite entries.')

    if length is not None and vector.size != length:
        raise ShapeError(f'<<<{name}>>> must have length <<<{length}>>>, got <<<{vector.size}>>>.')

    return vector


def metzler_majorant(A: ArrayLike) -> Matrix:
    """
    Metzler majorant ⌈A⌉: diagonal kept, off-diagonal entries replaced by their absolute values.

    Args:
        A (ArrayLike): Square matrix.

    Raises:
        ShapeError: If A is not square.

    Returns:
        Matrix: The Metzler majorant.

    Example:
    ```python
    from npsl.core_linalg import metzler_majorant

    print(metzler_majorant([[-2, -1], [3, -4]]))
    # >>> [[-2.  1.]
    # >>>  [ 3. -4.]]
    ```
    """
    matrix = as_matrix(A, name='A', square=True)
    majorant = np.abs(matrix)
    np.fill_diagonal(majorant, np.diag(matrix))

    return majorant


def abs_entrywise(A: ArrayLike) -> Matrix:
    """
    Entrywise absolute value |A|.
    """
    return np.abs(as_matrix(A, name='A'))


def hadamard(A: ArrayLike, B: ArrayLike) -> Matrix:
    """
    Hadamard (entrywise) product A∘B.

    Raises:
        ShapeError: If the shapes differ.
    """
    left = as_matrix(A, name='A')
    right = as_matrix(B, name='B')
    if left.shape != right.shape:
        raise ShapeError(f'Hadamard product needs equal shapes, got <<<{left.shape}>>> and <<<{right.shape}>>>.')

    return left * right


def symmetric_part(M: ArrayLike) -> Matrix:
    """
    Symmetric part (M + Mᵀ)/2 of a square matrix.
    """
    matrix = as_matrix(M, name='M', square=True)

    return (matrix + matrix.T) / 2


def spectral_abscissa(A: ArrayLike) -> float:
    """
    Largest real part over the eigenvalues of A.

    Args:
        A (ArrayLike): Square matrix.

    Raises:
        ShapeError: If A is not square.
        ConvergenceError: If the dense eigensolver fails.

    Returns:
        float: The spectral abscissa.

    Example:
    ```python
    from npsl.core_linalg import spectral_abscissa

    print(round(spectral_abscissa([[-2, 1], [5, -3]]), 4))
    # >>> -0.2087
    ```
    """
    matrix = as_matrix(A, name='A', square=True)
    try:
        eigenvalues = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as error:
        raise ConvergenceError(routine='eigvals', detail=str(error)) from None

    return float(np.max(eigenvalues.real))


def characteristic_polynomial(A: ArrayLike) -> Vector:
    """
    Closed-form characteristic polynomial coefficients of a matrix of size at most 3, highest degree first.

    Used as an independent oracle for the eigensolvers.

    Raises:
        ShapeError: If A is not square or larger than 3x3.
    """
    matrix = as_matrix(A, name='A', square=True)
    n = matrix.shape[0]
    if n > 3:
        raise ShapeError(f'Closed-form characteristic polynomial only for n <= 3, got <<<{n}>>>.')

    trace = float(np.trace(matrix))
    if n == 1:
        return np.array([1.0, -trace])

    if n == 2:
        return np.array([1.0, -trace, float(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0])])

    minors = sum(
        matrix[i, i] * matrix[j, j] - matrix[i, j] * matrix[j, i] for i in range(3) for j in range(i + 1, 3)
    )
    determinant = (
        matrix[0, 0] * (matrix[1, 1] * matrix[2, 2] - matrix[1, 2] * matrix[2, 1])
        - matrix[0, 1] * (matrix[1, 0] * matrix[2, 2] - matrix[1, 2] * matrix[2, 0])
        + matrix[0, 2] * (matrix[1, 0] * matrix[2, 1] - matrix[1, 1] * matrix[2, 0])
    )

    return np.array([1.0, -trace, float(minors), -float(determinant)])


def is_metzler(A: ArrayLike, tol_struct: float = 0.0) -> bool:
    """
    Check that every off-diagonal entry of A is at least -tol_struct.

    Args:
        A (ArrayLike): Square matrix.
        tol_struct (float, optional): Structural tolerance. Default to exact 0.

    Raises:
        ShapeError: If A is not square.

    Returns:
        bool: True if A is Metzler.
    """
    matrix = as_matrix(A, name='A', square=True)
    off_diagonal = matrix[~np.eye(matrix.shape[0], dtype=bool)]

    return bool(np.all(off_diagonal >= -tol_struct))


def is_irreducible(M: ArrayLike) -> bool:
    """
    Check irreducibility: the directed graph of nonzero off-diagonal entries is strongly connected.
    """
    matrix = as_matrix(M, name='M', square=True)
    if matrix.shape[0] == 1:
        return True

    pattern = matrix != 0
    np.fill_diagonal(pattern, False)
    components, _ = connected_components(csr_matrix(pattern), directed=True, connection='strong')

    return bool(components == 1)


def perron_pair(M: ArrayLike, tol: float = 1e-10, max_iter: int = 200_000) -> PerronPair:
    """
    Perron eigenvalue and strictly positive right/left eigenvectors of an irreducible Metzler matrix.

    The matrix is shifted by s > max|m_ii| to a nonnegative matrix with positive diagonal, which is primitive, and the
    right and left vectors are obtained by power iteration started from the dense eigensolver's dominant vector. The
    iteration stops once the residual ‖Nv - λv‖∞ falls below tol·max(1, ‖N‖∞).

    Args:
        M (ArrayLike): Square Metzler irreducible matrix.
        tol (float, optional): Residual tolerance. Default to 1e-10.
        max_iter (int, optional): Iteration cap per vector. Default to 200000.

    Raises:
        ShapeError: If M is not square or not Metzler.
        ReducibleMatrixError: If M is reducible.
        ConvergenceError: If power iteration does not reach the tolerance.

    Returns:
        PerronPair: Eigenvalue (the spectral abscissa of M) with ℓ1-normalized positive eigenvectors.

    Example:
    ```python
    from npsl.core_linalg import perron_pair

    pair = perron_pair([[-1, 1], [1, -1]])
    print(round(pair.eigenvalue, 12), pair.right)
    # >>> 0.0 [0.5 0.5]
    ```
    """
    matrix = as_matrix(M, name='M', square=True)
    if not is_metzler(matrix):
        raise ShapeError('Perron pair requires a Metzler matrix.')

    if not is_irreducible(matrix):
        raise ReducibleMatrixError(size=matrix.shape[0])

    shift = float(np.max(np.abs(np.diag(matrix)))) + 1.0
    shifted = matrix + shift * np.eye(matrix.shape[0])

    eigenvalue, right = _power_iteration(shifted, tol=tol, max_iter=max_iter)
    _, left = _power_iteration(shifted.T, tol=tol, max_iter=max_iter)
    logger.debug('perron pair: eigenvalue=%.6e shift=%.3e', eigenvalue - shift, shift)

    return PerronPair(eigenvalue=eigenvalue - shift, right=right, left=left)


def _power_iteration(N: Matrix, tol: float, max_iter: int) -> tuple[float, Vector]:
    """
    Power iteration on a primitive nonnegative matrix.

    Args:
        N (Matrix): Primitive nonnegative matrix.
        tol (float): Relative residual tolerance.
        max_iter (int): Iteration cap.

    Raises:
        ConvergenceError: If the cap is reached.

    Returns:
        tuple[float, Vector]: Dominant eigenvalue and its ℓ1-normalized positive eigenvector.
    """
    n = N.shape[0]
    eigenvalues, eigenvectors = np.linalg.eig(N)
    guess = np.abs(eigenvectors[:, int(np.argmax(eigenvalues.real))].real)
    vector = guess / guess.sum() if np.all(guess > 0) else np.full(n, 1.0 / n)

    scale = max(1.0, float(np.linalg.norm(N, np.inf)))
    for iteration in range(max_iter):
        image = N @ vector
        eigenvalue = float(image.sum())  # vector has unit ℓ1 norm and positive entries
        residual = float(np.max(np.abs(image - eigenvalue * vector)))
        if residual <= tol * scale:
            if not np.all(vector > 0):
                raise ReducibleMatrixError(size=n)
            return eigenvalue, vector
        vector = image / eigenvalue
        if iteration % 1000 == 999:
            logger.debug('power iteration %d residual %.3e', iteration + 1, residual)

    raise ConvergenceError(routine='perron power iteration', iterations=max_iter)


def eig_sym(S: ArrayLike) -> SymmetricEigen:
    """
    Full spectral decomposition of a symmetric matrix with eigenvalues in descending order.

    Args:
        S (ArrayLike): Symmetric matrix (within 1e-12 relative to its largest entry).

    Raises:
        ShapeError: If S is not square or not symmetric.
        ConvergenceError: If the eigensolver fails.

    Returns:
        SymmetricEigen: Eigenvalues (descending) and orthonormal eigenvectors as columns.
    """
    matrix = as_matrix(S, name='S', square=True)
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if float(np.max(np.abs(matrix - matrix.T))) > SYMMETRY_TOL * scale:
        raise ShapeError('Symmetric eigendecomposition requires a symmetric matrix.')

    try:
        values, vectors = linalg.eigh((matrix + matrix.T) / 2)
    except linalg.LinAlgError as error:
        raise ConvergenceError(routine='eigh', detail=str(error)) from None

    return SymmetricEigen(values=values[::-1].copy(), vectors=vectors[:, ::-1].copy())


def spd_power(S: ArrayLike, exponent: float) -> Matrix:
    """
    Power S^exponent of a symmetric positive definite matrix through its eigendecomposition.

    Raises:
        SingularMatrixError: If S is not positive definite.
    """
    values, vectors = eig_sym(S)
    if values[-1] <= 0:
        raise SingularMatrixError(condition=float('inf'), message='Matrix is not positive definite.')

    return (vectors * values**exponent) @ vectors.T


def solve_linear(A: ArrayLike, b: ArrayLike, condition_cap: float = 1e12) -> Vector:
    """
    Solve Ax = b for a square nonsingular A, checking conditioning and the residual
    ‖Ax - b‖∞ ≤ 1e-9·‖b‖∞.

    Args:
        A (ArrayLike): Square matrix.
        b (ArrayLike): Right-hand side.
        condition_cap (float, optional): Largest accepted condition number. Default to 1e12.

    Raises:
        ShapeError: On shape mismatch.
        SingularMatrixError: If A is singular to working precision or the residual check fails.

    Returns:
        Vector: The solution x.
    """
    matrix = as_matrix(A, name='A', square=True)
    rhs = as_vector(b, name='b', length=matrix.shape[0])
    condition = _checked_condition(matrix, condition_cap=condition_cap)

    solution = np.asarray(linalg.solve(matrix, rhs), dtype=np.float64)
    residual = float(np.max(np.abs(matrix @ solution - rhs)))
    if residual > SOLVE_RESIDUAL_TOL * float(np.max(np.abs(rhs))):
        raise SingularMatrixError(condition=condition, message=f'Residual <<<{residual:.3e}>>> too large.')

    return solution


def inverse(A: ArrayLike, condition_cap: float = 1e12) -> Matrix:
    """
    Inverse of a square nonsingular matrix.

    Raises:
        SingularMatrixError: If A is singular to working precision or its condition number exceeds condition_cap.
    """
    matrix = as_matrix(A, name='A', square=True)
    _checked_condition(matrix, condition_cap=condition_cap)

    return np.asarray(linalg.inv(matrix), dtype=np.float64)


def _checked_condition(matrix: Matrix, condition_cap: float) -> float:
    """
    2-norm condition number of a matrix, rejecting singular or ill-conditioned ones.
    """
    condition = float(np.linalg.cond(matrix))
    logger.debug('condition estimate %.3e', condition)
    if not np.isfinite(condition) or condition > condition_cap:
        raise SingularMatrixError(condition=condition)

    return condition
