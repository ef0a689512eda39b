"""
Non-polynomial S-Lemma engine: 2-forms, the convex dual, primal oracles, weak duality and the two zero-gap cases
(Metzler structure in ℓ1, one constraint in ℓ2).

The primal problem is α = sup{⟦P₀x, x⟧ : ‖x‖ = 1, ⟦P_i x, x⟧ ≤ ρ_i} (x ≥ 0 when conic) and the dual
is β = inf_{τ ≥ 0} g(τ) with g(τ) = μ(P₀ - Σ τ_i P_i) + τᵀρ (conic log norm when conic). α ≤ β always.
"""

import logging
import math
from collections.abc import Callable
from itertools import product
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize

from .core_linalg import Matrix, Vector, as_matrix, as_vector, eig_sym, is_metzler, symmetric_part
from .dual_solution import DualSolution
from .dual_status import DualStatus
from .exceptions import (
    ApproximateOnlyError,
    ConvergenceError,
    DualityGapError,
    HypothesisViolationError,
    ShapeError,
    UnsupportedNormError,
)
from .form_family import FormFamily
from .linear_program import LpStatus, minimize_lp
from .norm_spec import NormSpec
from .pairings import conic_log_norm, log_norm, pairing_rows, weak_pairing
from .primal_estimate import PrimalEstimate
from .scalar_search import bracket_half_line, golden_section
from .settings import Settings

logger = logging.getLogger(__name__)

WEAK_DUALITY_TOL = 1e-7
ZERO_GAP_TOL = 1e-6
SLOPE_TOL = 1e-10
EIGEN_CLUSTER_TOL = 1e-8
WITNESS_BLEND = 1e-10
POLISH_STARTS = 5
COMPASS_MAX_MOVES = 20_000
FEASIBILITY_SLACK = 1e-10


class WeakDualityReport(NamedTuple):
    """
    Primal lower estimate, dual value and whether α ≤ β + 1e-7 together with the sampled implication check.
    """

    alpha_lower: float
    beta: float
    ok: bool


class MetzlerZeroGap(NamedTuple):
    """
    Coinciding values for a Metzler-structured ℓ1 family: α from the closed simplex LP, β from the conic dual
    and its minimizer, the open simplex value ⟦P₀x, x⟧₁ at a strictly feasible point x > 0 next to the LP maximizer,
    that point, and β from the full log norm dual.
    """

    alpha: float
    beta: float
    tau_star: Vector
    alpha_open: float
    open_point: Vector
    beta_full: float


class YakubovichZeroGap(NamedTuple):
    """
    Coinciding values for a one-constraint ℓ2 family with the recovered primal maximizer and the complementarity
    residual |τ*·⟦P₁x*, x*⟧| (levels normalized to zero).
    """

    alpha: float
    beta: float
    tau_star: float
    complementarity_residual: float
    witness: Vector


class _LineResult(NamedTuple):
    x: float
    value: float
    evaluations: int
    status: DualStatus


def two_form(P: ArrayLike, x: ArrayLike, spec: NormSpec) -> float:
    """
    Non-polynomial 2-form ⟦Px, x⟧ in the given norm.

    Args:
        P (ArrayLike): Square matrix.
        x (ArrayLike): Vector.
        spec (NormSpec): Norm selection.

    Raises:
        ShapeError: If the shapes disagree.

    Returns:
        float: The form value, xᵀPx for the Euclidean norm.

    Example:
    ```python
    from npsl import NormSpec
    from npsl.slemma import two_form

    print(two_form([[1, 2], [0, 1]], [1, 1], NormSpec(p=2)))
    # >>> 4.0
    ```
    """
    matrix = as_matrix(P, name='P', square=True)
    vector = as_vector(x, name='x', length=matrix.shape[0])

    return weak_pairing(matrix @ vector, vector, spec).value


def dual_objective(family: FormFamily, tau: ArrayLike) -> float:
    """
    Dual objective g(τ) = μ(P₀ - Σ τ_j P_j) + τᵀρ, with the conic log norm for conic families.

    Args:
        family (FormFamily): S-Lemma instance.
        tau (ArrayLike): Multipliers, length s.

    Raises:
        ShapeError: If τ has the wrong length.
        ValueError: If some multiplier is negative.

    Returns:
        float: g(τ).
    """
    multipliers = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    if multipliers.size != family.constraint_count:
        raise ShapeError(f'Multipliers must have length <<<{family.constraint_count}>>>, got <<<{multipliers.size}>>>.')

    if np.any(multipliers < 0):
        raise ValueError('Dual multipliers must be nonnegative.')

    measure = conic_log_norm if family.conic else log_norm

    return measure(family.combined(multipliers), family.spec) + float(multipliers @ family.rho)


def solve_dual(family: FormFamily, settings: Settings | None = None) -> DualSolution:
    """
    Minimize the convex dual objective over τ ≥ 0.

    - s = 0: g is the constant μ(P₀).
    - s = 1: geometric bracketing from [0, 1] then golden-section search. The dual is unbounded below exactly when
      the asymptotic slope μ(-P₁) + ρ₁ is negative; a value below the configured floor is taken as unbounded too.
    - s > 1, p ∈ {1, inf}: the dual is a linear program in (t, τ, |off-diagonal|) and is solved exactly, followed by
      a coordinate-wise golden polish.
    - s > 1, p = 2: cyclic coordinate descent with the scalar routine until a cycle improves by less than the
      tolerance, then a Nelder-Mead polish.
    β is always the objective evaluated at the returned τ.

    Args:
        family (FormFamily): S-Lemma instance with p ∈ {1, 2, inf}.
        settings (Settings | None, optional): Tolerances and budgets. Default to `Settings.defaults()`.

    Raises:
        ApproximateOnlyError: If p ∉ {1, 2, inf}.
        UnsupportedNormError: For conic families outside p ∈ {1, inf}.

    Returns:
        DualSolution: Value, multipliers and status.

    Example:
    ```python
    from npsl import FormFamily, NormSpec
    from npsl.slemma import solve_dual

    family = FormFamily(forms=[[[1, 0], [1, 0]], [[0, 0], [1, 0]]], rho=[0.25], spec=NormSpec(p=1), conic=True)
    print(round(solve_dual(family).beta, 9))
    # >>> 1.25
    ```
    """
    settings = settings or Settings.defaults()
    if not family.spec.is_exact:
        raise ApproximateOnlyError(p=family.spec.p)

    s = family.constraint_count
    if s == 0:
        return DualSolution(beta=dual_objective(family, []), tau=np.zeros(0), iterations=1, status=DualStatus.OPTIMAL)

    if s == 1:
        line = _line_search(
            func=lambda t: dual_objective(family, [t]),
            slope=_asymptotic_slope(family, index=0),
            settings=settings,
        )
        beta = -math.inf if line.status is DualStatus.UNBOUNDED_BELOW else line.value
        logger.debug('scalar dual: tau=%.6e beta=%.12g status=%s', line.x, beta, line.status.value)
        return DualSolution(beta=beta, tau=[line.x], iterations=line.evaluations, status=line.status)

    if family.spec.p != 2:
        return _solve_lp_dual(family, settings)

    return _solve_coordinate_dual(family, settings)


def _asymptotic_slope(family: FormFamily, index: int) -> float:
    """
    Limit of g(τ)/τ_k as τ_k grows with the other multipliers fixed: μ(-P_k) + ρ_k.
    """
    measure = conic_log_norm if family.conic else log_norm

    return measure(-family.constraints[index], family.spec) + float(family.rho[index])


def _line_search(func: Callable[[float], float], slope: float, settings: Settings) -> _LineResult:
    """
    Minimize a convex function on [0, inf) given its asymptotic slope.
    """
    if slope < -SLOPE_TOL:
        return _LineResult(x=0.0, value=-math.inf, evaluations=0, status=DualStatus.UNBOUNDED_BELOW)

    bracket = bracket_half_line(
        func,
        start=1.0,
        factor=settings.dual_expansion,
        max_steps=settings.dual_max_doublings,
        floor=settings.unbounded_floor,
    )
    if bracket.unbounded:
        return _LineResult(bracket.upper, -math.inf, bracket.evaluations, DualStatus.UNBOUNDED_BELOW)

    if bracket.exhausted:
        return _LineResult(bracket.upper, func(bracket.upper), bracket.evaluations + 1, DualStatus.MAX_ITER)

    found = golden_section(func, bracket.lower, bracket.upper, tol=settings.dual_tol, max_iter=settings.max_cycles)

    return _LineResult(found.x, found.value, bracket.evaluations + found.evaluations, DualStatus.OPTIMAL)


def _solve_lp_dual(family: FormFamily, settings: Settings) -> DualSolution:
    """
    Exact dual for p ∈ {1, inf} through its epigraph linear program.

    Variables are (t, τ, u) with u_ij bounding |P(τ)_ij| (or its positive part when conic) for i ≠ j; every column
    (p=1) or row (p=inf) gives P(τ)_kk + Σ u + τᵀρ ≤ t.
    """
    spec = family.spec
    forms = [spec.similarity(form) for form in family.forms]
    n, s = family.dimension, family.constraint_count
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    size = 1 + s + len(off)
    columns = spec.p == 1

    rows: list[Vector] = []
    rhs: list[float] = []
    for k in range(n):
        row = np.zeros(size)
        row[0] = -1.0
        row[1 : 1 + s] = [family.rho[m] - forms[m + 1][k, k] for m in range(s)]
        for index, (i, j) in enumerate(off):
            if (columns and j == k) or (not columns and i == k):
                row[1 + s + index] = 1.0
        rows.append(row)
        rhs.append(-forms[0][k, k])

    for index, (i, j) in enumerate(off):
        row = np.zeros(size)
        row[1 : 1 + s] = [-forms[m + 1][i, j] for m in range(s)]
        row[1 + s + index] = -1.0
        rows.append(row)
        rhs.append(-forms[0][i, j])
        if not family.conic:
            mirrored = np.zeros(size)
            mirrored[1 : 1 + s] = [forms[m + 1][i, j] for m in range(s)]
            mirrored[1 + s + index] = -1.0
            rows.append(mirrored)
            rhs.append(forms[0][i, j])

    objective = np.zeros(size)
    objective[0] = 1.0
    bounds: list[tuple[float | None, float | None]] = [(None, None)] + [(0.0, None)] * (s + len(off))
    result = minimize_lp(objective, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds)

    if result.status is LpStatus.UNBOUNDED:
        return DualSolution(beta=-math.inf, tau=np.zeros(s), iterations=1, status=DualStatus.UNBOUNDED_BELOW)

    if result.status is not LpStatus.OPTIMAL or result.x is None:
        raise ConvergenceError(routine='dual epigraph LP', detail=result.status.value)

    tau = np.maximum(result.x[1 : 1 + s], 0.0)
    tau, beta, evaluations = _polish_coordinates(family, tau, settings)
    logger.debug('LP dual: t=%.12g beta=%.12g', result.value, beta)

    return DualSolution(beta=beta, tau=tau, iterations=evaluations, status=DualStatus.OPTIMAL)


def _polish_coordinates(family: FormFamily, tau: Vector, settings: Settings) -> tuple[Vector, float, int]:
    """
    Golden search on a small window around each multiplier, keeping only improvements.
    """
    tau = tau.copy()
    value = dual_objective(family, tau)
    evaluations = 1

    for k in range(tau.size):

        def along(t: float, k: int = k) -> float:
            trial = tau.copy()
            trial[k] = t
            return dual_objective(family, trial)

        radius = 1e-6 * max(1.0, float(tau[k]))
        found = golden_section(along, max(0.0, float(tau[k]) - radius), float(tau[k]) + radius, tol=settings.dual_tol)
        evaluations += found.evaluations
        if found.value < value:
            tau[k], value = found.x, found.value

    return tau, value, evaluations


def _solve_coordinate_dual(family: FormFamily, settings: Settings) -> DualSolution:
    """
    Cyclic coordinate descent on the multipliers followed by a Nelder-Mead polish.
    """
    s = family.constraint_count
    tau = np.zeros(s)
    value = dual_objective(family, tau)
    evaluations = 1
    status = DualStatus.MAX_ITER

    for _ in range(settings.max_cycles):
        previous = value
        for k in range(s):

            def along(t: float, k: int = k) -> float:
                trial = tau.copy()
                trial[k] = t
                return dual_objective(family, trial)

            line = _line_search(along, _asymptotic_slope(family, index=k), settings)
            evaluations += line.evaluations
            if line.status is DualStatus.UNBOUNDED_BELOW:
                return DualSolution(beta=-math.inf, tau=tau, iterations=evaluations, status=line.status)
            if line.value <= value:
                tau[k], value = line.x, line.value

        if previous - value < settings.dual_tol:
            status = DualStatus.OPTIMAL
            break

    polish = minimize(
        lambda v: dual_objective(family, np.abs(v)),
        tau,
        method='Nelder-Mead',
        options={'xatol': 1e-10, 'fatol': settings.dual_tol, 'maxiter': 2000 * s},
    )
    evaluations += int(polish.nfev)
    candidate = np.abs(np.asarray(polish.x, dtype=np.float64))
    polished = dual_objective(family, candidate)
    if polished < value:
        tau, value = candidate, polished

    return DualSolution(beta=value, tau=tau, iterations=evaluations, status=status)


def primal_oracle(
    family: FormFamily,
    budget: int | None = None,
    seed: int = 0,
    settings: Settings | None = None,
) -> PrimalEstimate:
    """
    Estimate the primal supremum α and return a feasible unit witness.

    For p=1 with n up to the face cap the value is exact: on each open face {x : sign(x) = σ} of the unit sphere
    the pairing is linear, ⟦Px, x⟧₁ = σᵀPx, so every face is an LP over a simplex. A face contributes its LP
    optimum when its relative interior meets the constraints (checked with a slack LP), and the witness is pulled
    into the relative interior. Conic families enumerate supports only. Other exponents (and larger n) use random sphere
    samples refined by a feasible compass search, plus SLSQP for p=2; those estimates are lower bounds.

    Args:
        family (FormFamily): S-Lemma instance.
        budget (int | None, optional): Number of random samples. Default to the configured budget.
        seed (int, optional): Random seed. Default to 0.
        settings (Settings | None, optional): Tolerances and budgets. Default to `Settings.defaults()`.

    Raises:
        UnsupportedNormError: For conic families with a weight that does not preserve the orthant.

    Returns:
        PrimalEstimate: Value (-inf when infeasible), witness and exactness.

    Example:
    ```python
    from npsl import FormFamily, NormSpec
    from npsl.slemma import primal_oracle

    family = FormFamily(forms=[[[1, 1], [0, 0]], [[0, 0], [0, -1]]], rho=[-1], spec=NormSpec(p=1), conic=True)
    estimate = primal_oracle(family)
    print(estimate.alpha_lower, estimate.witness)
    # >>> 0.0 [0. 1.]
    ```
    """
    settings = settings or Settings.defaults()
    spec = family.spec
    if family.conic and not spec.diagonal_weight:
        raise UnsupportedNormError(
            operation='primal_oracle',
            p=spec.p,
            supported='conic with a positive diagonal weight',
        )

    forms = [spec.similarity(form) for form in family.forms]
    n = family.dimension

    if spec.p == 1 and n <= settings.exact_face_cap:
        value, witness = _l1_faces(forms, family.rho, family.conic, settings)
        exact = True
    else:
        if spec.p == 1:
            logger.warning('face enumeration capped at n=%d, sampling a family of size %d', settings.exact_face_cap, n)
        value, witness = _sampled_primal(
            forms,
            family.rho,
            spec.p,
            family.conic,
            budget=budget or settings.primal_samples,
            seed=seed,
        )
        exact = False

    if witness is None:
        return PrimalEstimate(alpha_lower=-math.inf, witness=None, exact=exact)

    inverse = spec.weight_inverse
    if inverse is not None:
        witness = inverse @ witness

    return PrimalEstimate(alpha_lower=value, witness=witness, exact=exact)


def _sign_patterns(n: int, conic: bool) -> list[Vector]:
    """
    Sign patterns of the faces of the ℓ1 sphere, one per antipodal pair (supports only when conic).
    """
    patterns = []
    for signs in product((0.0, 1.0) if conic else (-1.0, 0.0, 1.0), repeat=n):
        pattern = np.array(signs)
        nonzero = np.flatnonzero(pattern)
        if nonzero.size and pattern[nonzero[0]] > 0:
            patterns.append(pattern)

    return patterns


def _l1_faces(
    forms: list[Matrix],
    rho: Vector,
    conic: bool,
    settings: Settings,
) -> tuple[float, Vector | None]:
    """
    Exact primal value in the unweighted ℓ1 norm by face enumeration.
    """
    best_value, best_witness = -math.inf, None
    n = forms[0].shape[0]

    for pattern in _sign_patterns(n, conic):
        support = np.flatnonzero(pattern)
        signs = pattern[support]
        coefficients = [(pattern @ form)[support] * signs for form in forms]
        objective = coefficients[0]
        if float(objective.max()) <= best_value:
            continue

        constraints = np.array(coefficients[1:]) if len(coefficients) > 1 else None
        result = minimize_lp(
            -objective,
            A_ub=constraints,
            b_ub=rho if constraints is not None else None,
            A_eq=np.ones((1, support.size)),
            b_eq=[1.0],
        )
        if result.status is not LpStatus.OPTIMAL or result.x is None or result.value is None:
            continue

        value = -result.value
        if value <= best_value:
            continue

        point = result.x
        if float(point.min()) <= settings.slack_margin:
            interior = _relative_interior_point(constraints, rho, support.size, settings)
            if interior is None:
                continue
            point = (1 - WITNESS_BLEND) * point + WITNESS_BLEND * interior

        witness = np.zeros(n)
        witness[support] = signs * point
        best_value, best_witness = value, witness / np.abs(witness).sum()

    return best_value, best_witness


def _relative_interior_point(
    constraints: Matrix | None,
    rho: Vector,
    size: int,
    settings: Settings,
) -> Vector | None:
    """
    Point of the simplex with all coordinates at least the slack margin that satisfies the constraints, if any.
    """
    rows = np.hstack([-np.eye(size), np.ones((size, 1))])
    rhs = np.zeros(size)
    if constraints is not None:
        rows = np.vstack([rows, np.hstack([constraints, np.zeros((constraints.shape[0], 1))])])
        rhs = np.concatenate([rhs, rho])

    objective = np.zeros(size + 1)
    objective[-1] = -1.0
    bounds: list[tuple[float | None, float | None]] = [(0.0, None)] * size + [(None, None)]
    result = minimize_lp(
        objective,
        A_ub=rows,
        b_ub=rhs,
        A_eq=np.hstack([np.ones((1, size)), np.zeros((1, 1))]),
        b_eq=[1.0],
        bounds=bounds,
    )
    if result.status is not LpStatus.OPTIMAL or result.x is None or result.x[-1] <= settings.slack_margin:
        return None

    return result.x[:size]


def _unit_rows(points: Matrix, p: float) -> Matrix:
    """
    Rows scaled to unit ℓp norm, zero rows dropped.
    """
    norms = np.linalg.norm(points, ord=p, axis=1)
    keep = norms > 0

    return points[keep] / norms[keep, None]


def _sample_sphere(n: int, p: float, conic: bool, budget: int, seed: int) -> Matrix:
    """
    Random unit vectors (nonnegative when conic) with the signed basis vectors appended.
    """
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((budget, n))
    basis = np.eye(n)
    if conic:
        points = np.abs(points)
    else:
        basis = np.vstack([basis, -basis])

    return _unit_rows(np.vstack([points, basis]), p)


def _forms_on_rows(forms: list[Matrix], points: Matrix, p: float) -> Matrix:
    """
    Values ⟦P_i x, x⟧ for every unit row x, one column per form.
    """
    return np.column_stack([pairing_rows(points @ form.T, points, p) for form in forms])


def _sampled_primal(
    forms: list[Matrix],
    rho: Vector,
    p: float,
    conic: bool,
    budget: int,
    seed: int,
) -> tuple[float, Vector | None]:
    """
    Sampling estimate of the primal value with feasible local refinement.
    """
    n = forms[0].shape[0]
    points = _sample_sphere(n, p, conic, budget, seed)
    values = _forms_on_rows(forms, points, p)
    feasible = np.all(values[:, 1:] <= rho, axis=1)
    if not np.any(feasible):
        return -math.inf, None

    def evaluate(x: Vector) -> tuple[float, bool]:
        row = _forms_on_rows(forms, x[None, :], p)[0]
        return float(row[0]), bool(np.all(row[1:] <= rho + FEASIBILITY_SLACK))

    candidates = points[feasible]
    objective = values[feasible, 0]
    best_value, best_witness = -math.inf, candidates[0]

    for index in np.argsort(objective)[::-1][:POLISH_STARTS]:
        x, value = _compass_search(candidates[index], float(objective[index]), evaluate, p, conic)
        if value > best_value:
            best_value, best_witness = value, x

    if p == 2:
        refined = _slsqp_refine(forms, rho, best_witness, conic)
        if refined is not None:
            value, ok = evaluate(refined)
            if ok and value > best_value:
                best_value, best_witness = value, refined

    return best_value, best_witness


def _compass_search(
    start: Vector,
    value: float,
    evaluate: Callable[[Vector], tuple[float, bool]],
    p: float,
    conic: bool,
) -> tuple[Vector, float]:
    """
    Feasible-only coordinate pattern search on the unit sphere, halving the step when no move improves.
    """
    x, step, moves = start.copy(), 0.1, 0
    while step > 1e-9 and moves < COMPASS_MAX_MOVES:
        improved = False
        for i in range(x.size):
            for direction in (1.0, -1.0):
                trial = x.copy()
                trial[i] += direction * step
                if conic:
                    trial = np.maximum(trial, 0.0)
                norm = float(np.linalg.norm(trial, ord=p))
                if norm == 0:
                    continue
                trial /= norm
                trial_value, ok = evaluate(trial)
                moves += 1
                if ok and trial_value > value:
                    x, value, improved = trial, trial_value, True
                    break
            if improved:
                break
        if not improved:
            step /= 2

    return x, value


def _slsqp_refine(forms: list[Matrix], rho: Vector, start: Vector, conic: bool) -> Vector | None:
    """
    SLSQP on the Euclidean problem max xᵀP₀x s.t. xᵀP_i x ≤ ρ_i, ‖x‖₂ = 1.
    """
    symmetric = [symmetric_part(form) for form in forms]
    constraints = [{'type': 'eq', 'fun': lambda x: float(x @ x) - 1.0}]
    for level, form in zip(rho, symmetric[1:], strict=True):
        constraints.append({'type': 'ineq', 'fun': lambda x, form=form, level=level: float(level - x @ form @ x)})

    result = minimize(
        lambda x: -float(x @ symmetric[0] @ x),
        start,
        method='SLSQP',
        constraints=constraints,
        bounds=[(0.0, None)] * start.size if conic else None,
        options={'ftol': 1e-14, 'maxiter': 500},
    )
    x = np.asarray(result.x, dtype=np.float64)
    norm = float(np.linalg.norm(x))
    if not np.all(np.isfinite(x)) or norm == 0:
        return None

    return x / norm


def weak_duality_check(
    family: FormFamily,
    budget: int | None = None,
    seed: int = 0,
    settings: Settings | None = None,
) -> WeakDualityReport:
    """
    Check α ≤ β + 1e-7 with the primal oracle and the dual solver, and the implication behind it: every sampled unit
    x with ⟦P_i x, x⟧ ≤ ρ_i satisfies ⟦P₀x, x⟧ ≤ β + 1e-7.

    Args:
        family (FormFamily): S-Lemma instance with p ∈ {1, 2, inf}.
        budget (int | None, optional): Samples for the oracle and the implication. Default to the configured budget.
        seed (int, optional): Random seed. Default to 0.
        settings (Settings | None, optional): Tolerances and budgets. Default to `Settings.defaults()`.

    Returns:
        WeakDualityReport: α estimate, β and the verdict.
    """
    settings = settings or Settings.defaults()
    budget = budget or settings.primal_samples
    primal = primal_oracle(family, budget=budget, seed=seed, settings=settings)
    dual = solve_dual(family, settings=settings)
    ok = primal.alpha_lower <= dual.beta + WEAK_DUALITY_TOL

    spec = family.spec
    forms = [spec.similarity(form) for form in family.forms]
    points = _sample_sphere(family.dimension, spec.p, family.conic, budget, seed + 1)
    values = _forms_on_rows(forms, points, spec.p)
    feasible = np.all(values[:, 1:] <= family.rho, axis=1)
    if np.any(feasible):
        ok = ok and bool(np.all(values[feasible, 0] <= dual.beta + WEAK_DUALITY_TOL))

    if not ok:
        logger.warning('weak duality violated: alpha=%.12g beta=%.12g', primal.alpha_lower, dual.beta)

    return WeakDualityReport(alpha_lower=primal.alpha_lower, beta=dual.beta, ok=ok)


def metzler_zero_gap(family: FormFamily, settings: Settings | None = None) -> MetzlerZeroGap:
    """
    Lossless S-Lemma for Metzler matrices in the ℓ1 norm.

    With P₀ Metzler, -P₁…-P_s Metzler and a strictly feasible interior point (x > 0, ‖x‖₁ = 1,
    ⟦P_i x, x⟧₁ < ρ_i), the primal value over the open or closed simplex, the strict and non-strict problems and
    the conic and full duals all coincide. α comes from one LP: max 1ᵀP₀x s.t. x ≥ 0, 1ᵀx = 1, 1ᵀP_i x ≤ ρ_i.

    Args:
        family (FormFamily): Unweighted ℓ1 family.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Raises:
        HypothesisViolationError: If the norm, sign structure or strict feasibility hypothesis fails.
        DualityGapError: If |α - β| exceeds 1e-6.

    Returns:
        MetzlerZeroGap: The coinciding values and the dual minimizer.
    """
    settings = settings or Settings.defaults()
    if family.spec.p != 1 or family.spec.is_weighted:
        raise HypothesisViolationError(hypothesis='requires the unweighted ℓ1 norm')

    if not is_metzler(family.objective, settings.tol_struct) or not all(
        is_metzler(-form, settings.tol_struct) for form in family.constraints
    ):
        raise HypothesisViolationError(hypothesis='requires P₀ Metzler and -P₁, …, -P_s Metzler')

    n = family.dimension
    sums = [np.ones(n) @ form for form in family.forms]
    constraints = np.array(sums[1:]) if family.constraint_count else None
    interior = np.full(n, 1 / n)

    if constraints is not None:
        strict = np.vstack(
            [np.hstack([-np.eye(n), np.ones((n, 1))]), np.hstack([constraints, np.ones((len(constraints), 1))])],
        )
        objective = np.zeros(n + 1)
        objective[-1] = -1.0
        slack = minimize_lp(
            objective,
            A_ub=strict,
            b_ub=np.concatenate([np.zeros(n), family.rho]),
            A_eq=np.hstack([np.ones((1, n)), np.zeros((1, 1))]),
            b_eq=[1.0],
            bounds=[(0.0, None)] * n + [(None, None)],
        )
        if slack.status is not LpStatus.OPTIMAL or slack.x is None or slack.x[-1] <= settings.slack_margin:
            raise HypothesisViolationError(
                hypothesis='requires strict feasibility: ‖x‖₁ = 1, x > 0, ⟦P_i x, x⟧₁ < ρ_i',
            )

        interior = slack.x[:n]

    primal = minimize_lp(
        -sums[0],
        A_ub=constraints,
        b_ub=family.rho if constraints is not None else None,
        A_eq=np.ones((1, n)),
        b_eq=[1.0],
    )
    if primal.status is not LpStatus.OPTIMAL or primal.value is None or primal.x is None:
        raise ConvergenceError(routine='Metzler primal LP', detail=primal.status.value)

    alpha = -primal.value
    conic = solve_dual(family.with_conic(True), settings=settings)
    full = solve_dual(family.with_conic(False), settings=settings)

    open_point = (1 - WITNESS_BLEND) * primal.x + WITNESS_BLEND * interior
    alpha_open = two_form(family.objective, open_point, family.spec)

    if abs(alpha - conic.beta) > ZERO_GAP_TOL:
        raise DualityGapError(alpha=alpha, beta=conic.beta, tolerance=ZERO_GAP_TOL)

    return MetzlerZeroGap(
        alpha=alpha,
        beta=conic.beta,
        tau_star=conic.tau,
        alpha_open=alpha_open,
        open_point=open_point,
        beta_full=full.beta,
    )


def yakubovich_zero_gap(family: FormFamily, settings: Settings | None = None) -> YakubovichZeroGap:
    """
    Lossless S-Lemma for one constraint in the ℓ2 norm.

    After shifting the level to zero, a Slater point is the eigenvector of the smallest eigenvalue of the constraint's
    symmetric part. The primal maximizer is recovered from the top eigenspace of the symmetric part of P₀ - τ*P₁:
    inside it a unit vector with ⟦P₁x, x⟧ = 0 (or ≤ 0 when τ* = 0) is built by mixing the extreme eigenvectors of
    the constraint compressed to that eigenspace.

    Args:
        family (FormFamily): Euclidean family with exactly one constraint.
        settings (Settings | None, optional): Tolerances. Default to `Settings.defaults()`.

    Raises:
        HypothesisViolationError: If the norm or the number of constraints is wrong, or there is no Slater point.
        DualityGapError: If the recovered primal value or complementarity misses the tolerance.

    Returns:
        YakubovichZeroGap: Values, multiplier, complementarity residual and the maximizer.
    """
    settings = settings or Settings.defaults()
    spec = family.spec
    if spec.p != 2:
        raise HypothesisViolationError(hypothesis='requires the ℓ2 norm')

    if family.constraint_count != 1:
        raise HypothesisViolationError(hypothesis='requires exactly one constraint')

    euclidean = FormFamily(forms=[spec.similarity(form) for form in family.forms], rho=family.rho, spec=NormSpec(p=2))
    shifted = normalize_rho(euclidean)
    objective, constraint = shifted.forms
    constraint_sym = symmetric_part(constraint)

    if eig_sym(constraint_sym).values[-1] >= 0:
        raise HypothesisViolationError(hypothesis='requires a Slater point: ⟦P₁x, x⟧ < ρ₁‖x‖² for some x')

    dual = solve_dual(shifted, settings=settings)
    if dual.status is not DualStatus.OPTIMAL:
        raise ConvergenceError(routine='Yakubovich dual', iterations=dual.iterations, detail=dual.status.value)

    tau = float(dual.tau[0])
    values, vectors = eig_sym(symmetric_part(objective - tau * constraint))
    cluster = values >= values[0] - EIGEN_CLUSTER_TOL * max(1.0, abs(float(values[0])))
    basis = vectors[:, cluster]
    compressed_values, compressed_vectors = eig_sym(basis.T @ constraint_sym @ basis)
    highest, lowest = float(compressed_values[0]), float(compressed_values[-1])

    if tau > SLOPE_TOL and lowest < 0 < highest:
        angle = math.atan(math.sqrt(-lowest / highest))
        mixed = math.cos(angle) * compressed_vectors[:, -1] + math.sin(angle) * compressed_vectors[:, 0]
    elif tau > SLOPE_TOL:
        mixed = compressed_vectors[:, 0] if abs(highest) < abs(lowest) else compressed_vectors[:, -1]
    else:
        mixed = compressed_vectors[:, -1]

    x = basis @ mixed
    x /= np.linalg.norm(x)
    alpha = float(x @ objective @ x)
    level = float(x @ constraint_sym @ x)
    residual = abs(tau * level)

    if level > EIGEN_CLUSTER_TOL or abs(alpha - dual.beta) > ZERO_GAP_TOL or residual > ZERO_GAP_TOL:
        raise DualityGapError(alpha=alpha, beta=dual.beta, tolerance=ZERO_GAP_TOL)

    inverse = spec.weight_inverse
    witness = x if inverse is None else inverse @ x

    return YakubovichZeroGap(
        alpha=alpha,
        beta=dual.beta,
        tau_star=tau,
        complementarity_residual=residual,
        witness=witness,
    )


def normalize_rho(family: FormFamily) -> FormFamily:
    """
    Equivalent family with zero levels: P_j ↦ P_j - ρ_j I and ρ_j ↦ 0.

    Both problems are unchanged because ⟦y - ρx, x⟧ = ⟦y, x⟧ - ρ‖x‖² and μ(M + cI) = μ(M) + c.
    """
    identity = np.eye(family.dimension)
    shifted = [form - level * identity for form, level in zip(family.constraints, family.rho, strict=True)]
    forms = [family.objective, *shifted]

    return FormFamily(forms=forms, rho=np.zeros(family.constraint_count), spec=family.spec, conic=family.conic)
