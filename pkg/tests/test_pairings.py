"""
Test the weak pairings and log norms.
"""

import math

import numpy as np
from hypothesis import given, settings as hypothesis_settings, strategies as st
from hypothesis.extra.numpy import arrays
from pytest import mark, raises as assert_raises

from npsl import NormSpec, PairingValue
from npsl.exceptions import ApproximateOnlyError, ShapeError, UnsupportedNormError
from npsl.pairings import (
    conic_log_norm,
    curve_derivative_residual,
    limit_error_budget,
    log_norm,
    log_norm_limit_estimate,
    log_norm_sampled,
    lumer_enumeration,
    open_simplex_grid,
    open_simplex_supremum,
    pairing_rows,
    segment_pairings,
    vector_norm,
    vector_norms,
    weak_pairing,
)
from tests.mother import MatrixMother

entries = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
exponents = st.sampled_from([1.0, 2.0, 3.0, math.inf])


@mark.parametrize(
    'p, expected',
    [
        (1, 7.0),
        (2, 5.0),
        (math.inf, 4.0),
    ],
)
def test_vector_norm(p: float, expected: float) -> None:
    """
    Test the unweighted norms of (3, -4).
    """
    assert vector_norm([3, -4], NormSpec(p=p)) == expected


def test_vector_norm_weighted() -> None:
    """
    Test that the weighted norm is the norm of Rx.
    """
    assert vector_norm([1, 1], NormSpec(p=math.inf, weight=[[3, 0], [0, 1]])) == 3.0


def test_weak_pairing_l1_sign() -> None:
    """
    Test the ℓ1 sign pairing.
    """
    assert weak_pairing(x=[1, 2], y=[1, -1], spec=NormSpec(p=1)).value == -2.0


def test_weak_pairing_l1_zero_sign() -> None:
    """
    Test that zero entries of y contribute nothing to the ℓ1 pairing.
    """
    assert weak_pairing(x=[5, 2], y=[0, 3], spec=NormSpec(p=1)).value == 6.0


def test_weak_pairing_l2_is_inner_product() -> None:
    """
    Test that the ℓ2 pairing is the inner product.
    """
    x, y = MatrixMother.create(rows=1, columns=4)[0], MatrixMother.create(rows=1, columns=4)[0]

    assert abs(weak_pairing(x, y, NormSpec(p=2)).value - float(x @ y)) < 1e-12


def test_weak_pairing_linf_active_set() -> None:
    """
    Test that the ℓ∞ pairing maximizes over the active index set and reports it.
    """
    pairing = weak_pairing(x=[1, 5, -2], y=[2, 1, -2], spec=NormSpec(p=math.inf))

    assert pairing.active_set == (0, 2)
    assert pairing.value == 4.0
    assert float(pairing) == 4.0


def test_weak_pairing_length_mismatch() -> None:
    """
    Test that arguments of different lengths are rejected.
    """
    with assert_raises(ShapeError):
        weak_pairing([1, 2], [1, 2, 3], NormSpec(p=2))


def test_pairing_value_empty_active_set() -> None:
    """
    Test that an empty active set is rejected.
    """
    with assert_raises(ValueError):
        PairingValue(1.0, active_set=())


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(x=arrays(np.float64, 4, elements=entries), p=exponents)
def test_weak_pairing_of_vector_with_itself(x: np.ndarray, p: float) -> None:
    """
    Test that ⟦x, x⟧ = ‖x‖².
    """
    spec = NormSpec(p=p)

    assert math.isclose(weak_pairing(x, x, spec).value, vector_norm(x, spec) ** 2, rel_tol=1e-9, abs_tol=1e-9)


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(
    x=arrays(np.float64, 3, elements=entries),
    y=arrays(np.float64, 3, elements=entries),
    p=exponents,
)
def test_weak_pairing_cauchy_schwarz(x: np.ndarray, y: np.ndarray, p: float) -> None:
    """
    Test that |⟦x, y⟧| ≤ ‖x‖‖y‖.
    """
    spec = NormSpec(p=p)
    bound = vector_norm(x, spec) * vector_norm(y, spec)

    assert abs(weak_pairing(x, y, spec).value) <= bound * (1 + 1e-9) + 1e-9


@mark.parametrize(
    'p, expected',
    [
        (1, 1.0),
        (math.inf, -1.0),
    ],
)
def test_log_norm_closed_forms(p: float, expected: float) -> None:
    """
    Test the column and row dominance formulas.
    """
    assert log_norm([[-2, 1], [3, -4]], NormSpec(p=p)) == expected


def test_log_norm_l2_is_top_eigenvalue_of_symmetric_part() -> None:
    """
    Test the Euclidean log norm.
    """
    matrix = MatrixMother.create(rows=3)
    expected = float(np.linalg.eigvalsh((matrix + matrix.T) / 2)[-1])

    assert abs(log_norm(matrix, NormSpec(p=2)) - expected) < 1e-10


def test_log_norm_weighted_uses_similarity() -> None:
    """
    Test that μ_{p,R}(A) = μ_p(RAR⁻¹).
    """
    matrix = MatrixMother.create(rows=2)
    weight = np.diag([2.0, 0.5])
    spec = NormSpec(p=1, weight=weight)

    expected = log_norm(weight @ matrix @ np.diag([0.5, 2.0]), NormSpec(p=1))

    assert abs(log_norm(matrix, spec) - expected) < 1e-12


def test_log_norm_inexact_exponent() -> None:
    """
    Test that exponents without closed forms are refused.
    """
    with assert_raises(ApproximateOnlyError):
        log_norm(np.eye(2), NormSpec(p=3))


def test_conic_log_norm_uses_positive_parts() -> None:
    """
    Test that negative off-diagonal entries do not count in the conic log norm.
    """
    matrix = [[-2, -5], [1, -3]]

    assert conic_log_norm(matrix, NormSpec(p=1)) == -1.0
    assert log_norm(matrix, NormSpec(p=1)) == 2.0


@mark.parametrize(
    'spec',
    [
        NormSpec(p=2),
        NormSpec(p=1, weight=[[1, 1], [0, 1]]),
    ],
)
def test_conic_log_norm_unsupported(spec: NormSpec) -> None:
    """
    Test that the conic log norm needs p ∈ {1, inf} and a diagonal weight.
    """
    with assert_raises(UnsupportedNormError):
        conic_log_norm(np.eye(2), spec)


@mark.parametrize('p', [1, 2, math.inf])
def test_log_norm_limit_estimate_within_budget(p: float) -> None:
    """
    Test that the difference quotient agrees with the closed form within its error budget.
    """
    matrix = MatrixMother.create(rows=3)
    spec = NormSpec(p=p)

    assert abs(log_norm_limit_estimate(matrix, spec) - log_norm(matrix, spec)) <= limit_error_budget(matrix, spec)


def test_log_norm_limit_estimate_invalid_step() -> None:
    """
    Test that the step must be positive.
    """
    with assert_raises(ValueError):
        log_norm_limit_estimate(np.eye(2), NormSpec(p=1), h=0)


def test_log_norm_sampled_is_lower_bound() -> None:
    """
    Test that the sampled value never exceeds the exact Euclidean log norm and comes close to it.
    """
    matrix = MatrixMother.create(rows=3)
    exact = log_norm(matrix, NormSpec(p=2))
    sampled = log_norm_sampled(matrix, p=2, n_samples=500, seed=1)

    assert sampled <= exact + 1e-9
    assert sampled >= exact - 1e-4


@mark.parametrize('p', [1, math.inf])
def test_log_norm_sampled_refuses_extremes(p: float) -> None:
    """
    Test that sampling is only for p ∈ (1, inf).
    """
    with assert_raises(UnsupportedNormError):
        log_norm_sampled(np.eye(2), p=p)


@mark.parametrize('p', [1, math.inf])
def test_lumer_enumeration_matches_closed_form(p: float) -> None:
    """
    Test that the enumerated supremum of ⟦Ax, x⟧ equals the closed-form log norm.
    """
    matrix = MatrixMother.create(rows=4)

    assert abs(lumer_enumeration(matrix, p).value - log_norm(matrix, NormSpec(p=p))) < 1e-12


def test_lumer_enumeration_conic() -> None:
    """
    Test that the conic enumeration matches the conic log norm.
    """
    matrix = MatrixMother.create(rows=3)

    assert abs(lumer_enumeration(matrix, 1, conic=True).value - conic_log_norm(matrix, NormSpec(p=1))) < 1e-12


def test_lumer_enumeration_unsupported() -> None:
    """
    Test that only p ∈ {1, inf} can be enumerated.
    """
    with assert_raises(UnsupportedNormError):
        lumer_enumeration(np.eye(2), 2)


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(
    matrix=arrays(np.float64, (3, 3), elements=entries),
    x=arrays(np.float64, 3, elements=entries),
    p=exponents,
)
def test_pairing_bounded_by_log_norm(matrix: np.ndarray, x: np.ndarray, p: float) -> None:
    """
    Test Lumer's inequality ⟦Ax, x⟧ ≤ μ(A)‖x‖² for the exact exponents.
    """
    spec = NormSpec(p=p)
    if not spec.is_exact:
        spec = NormSpec(p=2)

    bound = log_norm(matrix, spec) * vector_norm(x, spec) ** 2

    assert weak_pairing(matrix @ x, x, spec).value <= bound + 1e-7 * (1 + abs(bound))


def test_curve_derivative_residual_smooth_curve() -> None:
    """
    Test that the derivative formula holds to first order along a smooth curve.
    """
    ts = np.linspace(0, 1, 1001)
    xs = np.column_stack([np.cos(ts), 2 * np.sin(ts) + 1])

    assert curve_derivative_residual(ts, xs, NormSpec(p=2)) < 1e-2


def test_curve_derivative_residual_needs_samples() -> None:
    """
    Test that at least three samples are needed.
    """
    with assert_raises(ShapeError):
        curve_derivative_residual([0, 1], [[1, 0], [0, 1]], NormSpec(p=2))


@mark.parametrize('p', [1.0, 2.0, 3.0, math.inf])
def test_batched_norms_and_pairings(p: float) -> None:
    """
    Test that the batched norms and pairings match their single-vector counterparts row by row.
    """
    rows = np.array([[1.0, -2.0, 0.5], [0.0, 3.0, -3.0], [-1.0, 0.0, 0.0]])
    others = np.array([[2.0, 1.0, -1.0], [1.0, -1.0, 4.0], [0.5, 0.5, 0.5]])
    spec = NormSpec(p=p)

    norms = vector_norms(rows, spec)
    pairings = pairing_rows(others, rows, p)

    for index in range(rows.shape[0]):
        assert abs(norms[index] - vector_norm(rows[index], spec)) < 1e-12
        assert abs(pairings[index] - weak_pairing(others[index], rows[index], spec).value) < 1e-12


def test_pairing_rows_shape_mismatch() -> None:
    """
    Test that batches of different shapes raise ShapeError.
    """
    with assert_raises(ShapeError):
        pairing_rows(np.ones((2, 3)), np.ones((3, 3)), 2.0)


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(
    x=arrays(np.float64, 3, elements=entries),
    y=arrays(np.float64, 3, elements=entries),
    c=entries,
    p=exponents,
)
def test_weak_pairing_shift_along_second_argument(x: np.ndarray, y: np.ndarray, c: float, p: float) -> None:
    """
    Test that ⟦x + cy, y⟧ = ⟦x, y⟧ + c‖y‖².
    """
    spec = NormSpec(p=p)
    norm = vector_norm(y, spec)
    expected = weak_pairing(x, y, spec).value + c * norm**2
    scale = 1 + vector_norm(x, spec) * norm + abs(c) * norm**2

    assert abs(weak_pairing(x + c * y, y, spec).value - expected) <= 1e-12 * scale


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(
    first=arrays(np.float64, 3, elements=entries),
    second=arrays(np.float64, 3, elements=entries),
    y=arrays(np.float64, 3, elements=entries),
    p=exponents,
)
def test_weak_pairing_subadditive(first: np.ndarray, second: np.ndarray, y: np.ndarray, p: float) -> None:
    """
    Test that ⟦x₁ + x₂, y⟧ ≤ ⟦x₁, y⟧ + ⟦x₂, y⟧.
    """
    spec = NormSpec(p=p)
    bound = weak_pairing(first, y, spec).value + weak_pairing(second, y, spec).value

    assert weak_pairing(first + second, y, spec).value <= bound + 1e-9 * (1 + abs(bound))


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(
    x=arrays(np.float64, 3, elements=entries),
    y=arrays(np.float64, 3, elements=entries),
    alpha=st.floats(min_value=0, max_value=10, allow_nan=False),
    p=exponents,
)
def test_weak_pairing_weak_homogeneity(x: np.ndarray, y: np.ndarray, alpha: float, p: float) -> None:
    """
    Test that ⟦αx, y⟧ = ⟦x, αy⟧ = α⟦x, y⟧ for α ≥ 0 and ⟦-x, -y⟧ = ⟦x, y⟧.
    """
    spec = NormSpec(p=p)
    value = weak_pairing(x, y, spec).value
    tolerance = 1e-9 * (1 + alpha) * (1 + vector_norm(x, spec) * vector_norm(y, spec))

    assert abs(weak_pairing(alpha * x, y, spec).value - alpha * value) <= tolerance
    assert abs(weak_pairing(x, alpha * y, spec).value - alpha * value) <= tolerance
    assert abs(weak_pairing(-x, -y, spec).value - value) <= tolerance


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(
    matrix=arrays(np.float64, (3, 3), elements=entries),
    c=entries,
    p=st.sampled_from([1.0, 2.0, math.inf]),
)
def test_log_norm_translation(matrix: np.ndarray, c: float, p: float) -> None:
    """
    Test that μ(A + cI) = μ(A) + c.
    """
    spec = NormSpec(p=p)

    assert abs(log_norm(matrix + c * np.eye(3), spec) - log_norm(matrix, spec) - c) < 1e-9


def test_open_simplex_grid() -> None:
    """
    Test that the grid has C(N - 1, n - 1) positive points on the simplex.
    """
    points = open_simplex_grid(n=3, resolution=5)

    assert points.shape == (6, 3)
    assert np.all(points > 0)
    assert np.allclose(points.sum(axis=1), 1.0)
    assert open_simplex_grid(n=1, resolution=4).tolist() == [[1.0]]

    with assert_raises(ValueError):
        open_simplex_grid(n=3, resolution=2)


@mark.property_testing
@hypothesis_settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_open_simplex_supremum_approaches_metzler_log_norm(seed: int) -> None:
    """
    Test that the grid supremum of ⟦Mx, x⟧₁ over the open simplex stays below μ₁(M) = μ₁⁺(M) and closes the gap as
    the grid refines.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    metzler = np.abs(rng.standard_normal((n, n)))
    np.fill_diagonal(metzler, rng.standard_normal(n))
    mu = log_norm(metzler, NormSpec(p=1))
    sums = metzler.sum(axis=0)

    assert abs(mu - conic_log_norm(metzler, NormSpec(p=1))) < 1e-12

    previous = -math.inf
    for resolution in (10, 20, 40):
        supremum = open_simplex_supremum(metzler, resolution)
        allowance = (n - 1) / resolution * float(sums.max() - sums.min())

        assert supremum <= mu + 1e-10
        assert mu - supremum <= allowance + 1e-10
        assert supremum >= previous - 1e-12
        previous = supremum


@mark.property_testing
@hypothesis_settings(max_examples=100, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_segment_pairings_concave_for_nonnegative_matrices(seed: int) -> None:
    """
    Test that θ ↦ ⟦Mx^θ, x^θ⟧₁ is concave along segments of the closed simplex when M ≥ 0.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    nonnegative = np.abs(rng.standard_normal((n, n)))
    ends = rng.dirichlet(np.ones(n), size=2) * (rng.random((2, n)) < 0.6)
    ends[ends.sum(axis=1) == 0, 0] = 1.0
    ends /= ends.sum(axis=1, keepdims=True)
    low, high = np.sort(rng.random(2))

    values = segment_pairings(nonnegative, ends[0], ends[1], np.linspace(0, 1, 21))
    chord = segment_pairings(nonnegative, ends[0], ends[1], [low, (low + high) / 2, high])

    assert np.all(values[:-2] - 2 * values[1:-1] + values[2:] <= 1e-10)
    assert chord[1] >= (chord[0] + chord[2]) / 2 - 1e-10
