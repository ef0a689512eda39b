"""
Norms, weak pairings, log norms and conic log norms for weighted ℓp spaces, with the limit-definition, sampling and
enumeration oracles used to cross-check the closed forms.

Weighted quantities are reduced to unweighted ones by the change of variables x ↦ Rx: ‖x‖_{p,R} = ‖Rx‖_p,
⟦x, y⟧_{p,R} = ⟦Rx, Ry⟧_p and μ_{p,R}(A) = μ_p(RAR⁻¹).
"""

import logging
import math
from itertools import combinations
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize

from .core_linalg import Matrix, Vector, as_matrix, as_vector, eig_sym
from .exceptions import ApproximateOnlyError, ShapeError, UnsupportedNormError
from .norm_spec import NormSpec
from .pairing_value import PairingValue

logger = logging.getLogger(__name__)

POLISH_STARTS = 5


class LumerResult(NamedTuple):
    """
    Maximum of ⟦Ax, x⟧ over the finite candidate set of Lumer's equalities and the maximizing unit vector.
    """

    value: float
    argmax: Vector


def vector_norm(x: ArrayLike, spec: NormSpec) -> float:
    """
    Weighted norm ‖Rx‖_p.

    Args:
        x (ArrayLike): Vector.
        spec (NormSpec): Norm selection.

    Raises:
        ShapeError: On dimension mismatch with the weight.

    Returns:
        float: The norm.

    Example:
    ```python
    from npsl import NormSpec
    from npsl.pairings import vector_norm

    print(vector_norm([3, -4], NormSpec(p=1)), vector_norm([3, -4], NormSpec(p=2)))
    # >>> 7.0 5.0
    ```
    """
    vector = as_vector(x, name='x')

    return float(np.linalg.norm(spec.apply(vector), ord=spec.p))


def vector_norms(xs: ArrayLike, spec: NormSpec) -> Vector:
    """
    Weighted norms of a batch of vectors given as rows.
    """
    rows = np.atleast_2d(np.asarray(xs, dtype=np.float64))

    return np.asarray(np.linalg.norm(spec.apply(rows), ord=spec.p, axis=1), dtype=np.float64)


def weak_pairing(x: ArrayLike, y: ArrayLike, spec: NormSpec) -> PairingValue:
    """
    Weak pairing ⟦x, y⟧ compatible with the weighted ℓp norm, ⟦x, x⟧ = ‖x‖².

    For the unweighted exponents:
    - p=1: ‖y‖₁ sign(y)ᵀx (sign pairing, sign(0)=0);
    - p=2: yᵀx;
    - p=inf: max of x_i y_i over I∞(y) = {i : |y_i| = ‖y‖∞}, the active set is returned with the value;
    - otherwise: ‖y‖_p^{2-p} (y∘|y|^{p-2})ᵀx.
    The weighted pairing is ⟦Rx, Ry⟧_p.

    Args:
        x (ArrayLike): First argument.
        y (ArrayLike): Second argument.
        spec (NormSpec): Norm selection.

    Raises:
        ShapeError: If the lengths differ or do not match the weight.

    Returns:
        PairingValue: Value, with the active index set when p=inf.

    Example:
    ```python
    from npsl import NormSpec
    from npsl.pairings import weak_pairing

    print(weak_pairing(x=[1, 2], y=[1, -1], spec=NormSpec(p=1)))
    # >>> -2.0
    ```
    """
    first = as_vector(x, name='x')
    second = as_vector(y, name='y', length=first.size)
    u = spec.apply(first)
    v = spec.apply(second)

    if math.isinf(spec.p):
        magnitude = np.abs(v)
        active = np.flatnonzero(magnitude == magnitude.max())
        return PairingValue(value=float(np.max(u[active] * v[active])), active_set=tuple(int(i) for i in active))

    return PairingValue(value=float(pairing_rows(u[None, :], v[None, :], spec.p)[0]))


def pairing_rows(U: ArrayLike, V: ArrayLike, p: float) -> Vector:
    """
    Unweighted pairings ⟦u_k, v_k⟧_p of matching rows of U and V.

    Args:
        U (ArrayLike): First arguments as rows.
        V (ArrayLike): Second arguments as rows.
        p (float): Norm exponent.

    Raises:
        ShapeError: If the batches have different shapes.

    Returns:
        Vector: One pairing value per row.
    """
    first = np.atleast_2d(np.asarray(U, dtype=np.float64))
    second = np.atleast_2d(np.asarray(V, dtype=np.float64))
    if first.shape != second.shape:
        raise ShapeError(f'Pairing batches differ in shape: <<<{first.shape}>>> and <<<{second.shape}>>>.')

    if p == 2:
        return np.einsum('ij,ij->i', first, second)

    if p == 1:
        return np.abs(second).sum(axis=1) * np.einsum('ij,ij->i', np.sign(second), first)

    if math.isinf(p):
        magnitude = np.abs(second)
        active = magnitude == magnitude.max(axis=1, keepdims=True)
        return np.where(active, first * second, -np.inf).max(axis=1)

    norms = np.linalg.norm(second, ord=p, axis=1)
    weighted = np.einsum('ij,ij->i', np.sign(second) * np.abs(second) ** (p - 1), first)
    with np.errstate(divide='ignore', invalid='ignore'):
        scale = np.where(norms > 0, norms ** (2 - p), 0.0)

    return np.asarray(scale * weighted, dtype=np.float64)


def log_norm(A: ArrayLike, spec: NormSpec) -> float:
    """
    Log norm μ_{p,R}(A) from the closed forms applied to RAR⁻¹.

    - p=1: max over columns j of a_jj + Σ_{i≠j} |a_ij|;
    - p=2: largest eigenvalue of the symmetric part;
    - p=inf: max over rows i of a_ii + Σ_{j≠i} |a_ij|.

    Args:
        A (ArrayLike): Square matrix.
        spec (NormSpec): Norm selection.

    Raises:
        ApproximateOnlyError: If p ∉ {1, 2, inf}; use `log_norm_sampled` there.
        ShapeError: If A is not square or does not match the weight.

    Returns:
        float: The log norm.

    Example:
    ```python
    from npsl import NormSpec
    from npsl.pairings import log_norm

    print(log_norm([[-2, 1], [3, -4]], NormSpec(p=1)), log_norm([[-2, 1], [3, -4]], NormSpec(p=float('inf'))))
    # >>> 1.0 -1.0
    ```
    """
    if not spec.is_exact:
        raise ApproximateOnlyError(p=spec.p)

    matrix = spec.similarity(A)
    if spec.p == 2:
        return float(eig_sym((matrix + matrix.T) / 2).values[0])

    return _dominance(matrix, columns=spec.p == 1, conic=False)


def conic_log_norm(A: ArrayLike, spec: NormSpec) -> float:
    """
    Conic log norm μ⁺_{p,R}(A): the log norm restricted to the nonnegative orthant, off-diagonal absolute values
    replaced by positive parts.

    Args:
        A (ArrayLike): Square matrix.
        spec (NormSpec): Norm selection, p ∈ {1, inf} with no weight or a positive diagonal weight.

    Raises:
        UnsupportedNormError: For other exponents or weights that do not preserve the orthant.

    Returns:
        float: The conic log norm.
    """
    if spec.p not in (1.0, math.inf) or not spec.diagonal_weight:
        raise UnsupportedNormError(
            operation='conic_log_norm',
            p=spec.p,
            supported='1, inf with a positive diagonal weight',
        )

    return _dominance(spec.similarity(A), columns=spec.p == 1, conic=True)


def _dominance(matrix: Matrix, columns: bool, conic: bool) -> float:
    """
    Maximum over columns (or rows) of the diagonal entry plus the off-diagonal absolute values (or positive parts).
    """
    off = np.maximum(matrix, 0.0) if conic else np.abs(matrix)
    np.fill_diagonal(off, 0.0)
    sums = off.sum(axis=0 if columns else 1)

    return float(np.max(np.diag(matrix) + sums))


def log_norm_limit_estimate(A: ArrayLike, spec: NormSpec, h: float = 1e-6) -> float:
    """
    One-sided difference quotient (‖I + hA‖ - 1)/h of the induced norm, the defining limit of the log norm.

    The induced norm is exact: max column or row absolute sums for p ∈ {1, inf}, the largest singular value for p=2.
    The first-order error is bounded by `limit_error_budget`.

    Args:
        A (ArrayLike): Square matrix.
        spec (NormSpec): Norm selection, p ∈ {1, 2, inf}.
        h (float, optional): Step. Default to 1e-6.

    Raises:
        ValueError: If h is not positive.
        UnsupportedNormError: If p ∉ {1, 2, inf}.

    Returns:
        float: The difference quotient.
    """
    if h <= 0:
        raise ValueError(f'Step must be positive, got <<<{h}>>>.')

    if not spec.is_exact:
        raise UnsupportedNormError(operation='log_norm_limit_estimate', p=spec.p, supported='1, 2, inf')

    matrix = spec.similarity(A)
    step = np.eye(matrix.shape[0]) + h * matrix
    order: float = 2 if spec.p == 2 else spec.p

    return float((np.linalg.norm(step, ord=order) - 1.0) / h)


def limit_error_budget(A: ArrayLike, spec: NormSpec, h: float = 1e-6) -> float:
    """
    Error allowance C·h of `log_norm_limit_estimate` with C = ‖RAR⁻¹‖₂², plus a roundoff term.
    """
    matrix = spec.similarity(A)

    return float(h * np.linalg.norm(matrix, ord=2) ** 2 + 4 * np.finfo(np.float64).eps / h)


def log_norm_sampled(A: ArrayLike, p: float, n_samples: int = 2000, seed: int = 0) -> float:
    """
    Lower bound on μ_p(A) for p ∈ (1, inf): the largest ⟦Ax, x⟧_p over random points of the unit sphere and the
    signed basis vectors, polished locally from the best candidates.

    Exact log norms for these exponents are intractable in general; every value obtained here is attained at an
    evaluated point, so it never exceeds the true log norm.

    Args:
        A (ArrayLike): Square matrix, already transformed by the weight if any.
        p (float): Exponent in (1, inf).
        n_samples (int, optional): Random sphere samples. Default to 2000.
        seed (int, optional): Random seed. Default to 0.

    Raises:
        UnsupportedNormError: If p is not in (1, inf).

    Returns:
        float: The sampled lower bound.
    """
    if not 1 < p < math.inf:
        raise UnsupportedNormError(operation='log_norm_sampled', p=p, supported='(1, inf)')

    matrix = as_matrix(A, name='A', square=True)
    n = matrix.shape[0]
    rng = np.random.default_rng(seed)

    candidates = np.vstack([rng.standard_normal((n_samples, n)), np.eye(n), -np.eye(n)])
    candidates /= np.linalg.norm(candidates, ord=p, axis=1)[:, None]
    values = pairing_rows(candidates @ matrix.T, candidates, p)

    def ratio(x: Vector) -> float:
        norm = float(np.linalg.norm(x, ord=p))
        if norm == 0:
            return -math.inf
        return float(pairing_rows((matrix @ x)[None, :], x[None, :], p)[0]) / norm**2

    best = float(np.max(values))
    for index in np.argsort(values)[::-1][:POLISH_STARTS]:
        result = minimize(
            lambda x: -ratio(x),
            candidates[index],
            method='Powell',
            options={'xtol': 1e-10, 'ftol': 1e-14, 'maxfev': 4000 * n},
        )
        polished = ratio(np.asarray(result.x, dtype=np.float64))
        if np.isfinite(polished):
            best = max(best, polished)

    logger.debug('sampled log norm p=%g: %.12g', p, best)
    return best


def open_simplex_grid(n: int, resolution: int) -> Matrix:
    """
    Points k/N of the open simplex {x > 0, 1ᵀx = 1} with positive integer k and N = resolution, one per row.

    Args:
        n (int): Dimension.
        resolution (int): Grid denominator N, at least n.

    Raises:
        ValueError: If n < 1 or resolution < n.

    Returns:
        Matrix: The C(N - 1, n - 1) grid points.

    Example:
    ```python
    from npsl.pairings import open_simplex_grid

    print(open_simplex_grid(n=2, resolution=3).tolist())
    # >>> [[0.3333333333333333, 0.6666666666666666], [0.6666666666666666, 0.3333333333333333]]
    ```
    """
    if n < 1 or resolution < n:
        raise ValueError(f'Simplex grid needs 1 <= n <= resolution, got <<<{n}>>> and <<<{resolution}>>>.')

    chosen = list(combinations(range(1, resolution), n - 1))
    cuts = np.array(chosen, dtype=np.int64).reshape(len(chosen), n - 1)
    edges = np.hstack([np.zeros((cuts.shape[0], 1), dtype=np.int64), cuts, np.full((cuts.shape[0], 1), resolution)])

    return np.diff(edges, axis=1) / resolution


def open_simplex_supremum(A: ArrayLike, resolution: int, p: float = 1.0) -> float:
    """
    Largest ⟦Ax, x⟧_p / ‖x‖_p² over `open_simplex_grid`. Every value is attained at a positive x, so it never exceeds
    the conic log norm; for Metzler A and p=1 it approaches μ₁(A) from below, within (n - 1)/N times the spread of the
    column sums.

    Args:
        A (ArrayLike): Square matrix.
        resolution (int): Grid denominator N, at least n.
        p (float, optional): Exponent. Default to 1.

    Returns:
        float: The grid supremum.
    """
    matrix = as_matrix(A, name='A', square=True)
    points = open_simplex_grid(matrix.shape[0], resolution)
    norms = np.linalg.norm(points, ord=p, axis=1)

    return float(np.max(pairing_rows(points @ matrix.T, points, p) / norms**2))


def segment_pairings(A: ArrayLike, x0: ArrayLike, x1: ArrayLike, thetas: ArrayLike, p: float = 1.0) -> Vector:
    """
    Values θ ↦ ⟦Ax^θ, x^θ⟧_p along the segment x^θ = (1 - θ)x⁰ + θx¹.

    For nonnegative A, p=1 and endpoints in the closed simplex the values are concave in θ: linear inside the segment,
    and lower at an endpoint whose support is smaller.

    Args:
        A (ArrayLike): Square matrix.
        x0 (ArrayLike): Segment start.
        x1 (ArrayLike): Segment end.
        thetas (ArrayLike): Positions along the segment.
        p (float, optional): Exponent. Default to 1.

    Returns:
        Vector: One value per θ.
    """
    matrix = as_matrix(A, name='A', square=True)
    start = as_vector(x0, name='x0', length=matrix.shape[0])
    end = as_vector(x1, name='x1', length=matrix.shape[0])
    positions = np.asarray(thetas, dtype=np.float64).reshape(-1, 1)

    points = (1 - positions) * start + positions * end
    return pairing_rows(points @ matrix.T, points, p)


def lumer_enumeration(A: ArrayLike, p: float, conic: bool = False) -> LumerResult:
    """
    Exact maximization of ⟦Ax, x⟧ over unit vectors by enumerating where Lumer's supremum is attained.

    - p=inf: for each row i the vector with x_i = 1 and x_j = sign(a_ij) (clipped at 0 when conic), evaluated with
      the max pairing.
    - p=1: the supremum is attained in the limit along e_j + εσ with σ_i = sign(a_ij) (σ_i = 1 when a_ij is 0, and
      σ_i ∈ {0, 1} following the sign when conic); the value is σᵀAe_j and the returned argmax is e_j.

    Args:
        A (ArrayLike): Square matrix.
        p (float): 1 or inf.
        conic (bool, optional): Restrict to the nonnegative orthant. Default to False.

    Raises:
        UnsupportedNormError: For other exponents.

    Returns:
        LumerResult: Maximum value and a maximizing (support) vector.
    """
    matrix = as_matrix(A, name='A', square=True)
    n = matrix.shape[0]

    if p == 1:
        values = np.empty(n)
        for j in range(n):
            column = matrix[:, j]
            sigma = (column > 0).astype(np.float64) if conic else np.where(column < 0, -1.0, 1.0)
            sigma[j] = 1.0
            values[j] = float(sigma @ column)
        best = int(np.argmax(values))
        return LumerResult(value=float(values[best]), argmax=np.eye(n)[best])

    if math.isinf(p):
        spec = NormSpec(p=math.inf)
        best_value, best_vector = -math.inf, np.zeros(n)
        for i in range(n):
            candidate = np.sign(matrix[i])
            if conic:
                candidate = np.maximum(candidate, 0.0)
            candidate[i] = 1.0
            value = weak_pairing(matrix @ candidate, candidate, spec).value
            if value > best_value:
                best_value, best_vector = value, candidate
        return LumerResult(value=best_value, argmax=best_vector)

    raise UnsupportedNormError(operation='lumer_enumeration', p=p, supported='1, inf')


def curve_derivative_residual(ts: ArrayLike, xs: ArrayLike, spec: NormSpec) -> float:
    """
    Largest deviation, over interior samples, between the forward difference of ‖x(t)‖² and 2⟦ẋ, x⟧ with ẋ the
    forward difference of the curve. It is O(dt) for a differentiable curve away from the kinks of the norm.

    Args:
        ts (ArrayLike): Strictly increasing sample times.
        xs (ArrayLike): Curve samples as rows.
        spec (NormSpec): Norm selection.

    Raises:
        ShapeError: With fewer than 3 samples, non-increasing times or mismatched lengths.

    Returns:
        float: The residual.
    """
    times = as_vector(ts, name='ts')
    points = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    if times.size < 3 or points.shape[0] != times.size:
        raise ShapeError('Curve residual needs at least 3 samples with one time per sample.')

    steps = np.diff(times)
    if np.any(steps <= 0):
        raise ShapeError('Sample times must be strictly increasing.')

    squares = vector_norms(points, spec) ** 2
    derivative = np.diff(squares) / steps
    velocity = np.diff(points, axis=0) / steps[:, None]
    pairing = pairing_rows(spec.apply(velocity), spec.apply(points[:-1]), spec.p)
    residual = np.abs(derivative - 2 * pairing)

    return float(np.max(residual[1:]))
