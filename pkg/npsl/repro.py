"""
Reproduction suite: recomputes the worked counterexamples, the zero-gap and equivalence suites, the positive-system
and circle-criterion values and the end-to-end simulation check from the bundled inputs, and reports one pass/fail
row per check.
"""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from importlib.resources import files
from typing import Any, NamedTuple

import numpy as np

from .certificate import Certificate
from .core_linalg import is_metzler
from .exceptions import DualityGapError, HypothesisViolationError, NpslError
from .form_family import FormFamily
from .instances import random_family, random_metzler_family, random_scalar_lure, random_yakubovich_family
from .lure import (
    certify_l2_schur,
    certify_l2_symmetrization,
    certify_lp_dual,
    circle_halfplane,
    l2_symmetrization_tests,
    max_certified_rate,
    metzler_max_rate,
    metzler_path,
)
from .lure_system import LureSystem
from .norm_spec import NormSpec
from .pairings import (
    conic_log_norm,
    limit_error_budget,
    log_norm,
    log_norm_limit_estimate,
    lumer_enumeration,
    open_simplex_supremum,
    segment_pairings,
)
from .parser import load_json, parse_family, parse_system
from .settings import Settings
from .simulate import validate_certificate
from .slemma import metzler_zero_gap, primal_oracle, solve_dual, weak_duality_check, yakubovich_zero_gap

logger = logging.getLogger(__name__)

EXAMPLE_TOL = 1e-9
METZLER_GAP_TOL = 1e-6
YAKUBOVICH_GAP_TOL = 1e-4
COMPLEMENTARITY_TOL = 1e-6
DECISION_MARGIN = 1e-8
RATE_TOL = 1e-6
LIMIT_TOL = 1e-4
SIMPLEX_RESOLUTION = 20
SEGMENT_POINTS = 11
SEGMENTS_PER_MATRIX = 50
SIMPLEX_TOL = 1e-10


class ReproCheck(NamedTuple):
    """
    One row of the reproduction report.
    """

    name: str
    expected: str
    observed: Any
    passed: bool


def load_bundled(name: str) -> Any:
    """
    Decoded JSON of a file shipped in `npsl/data`.

    Args:
        name (str): File name, such as 'example1.json'.

    Returns:
        Any: The document.
    """
    return load_json(str(files('npsl') / 'data' / name))


def family_from_bundle(name: str) -> FormFamily:
    """
    Bundled form family by file name.
    """
    return parse_family(load_bundled(name))


def system_from_bundle(name: str) -> LureSystem:
    """
    Bundled Lur'e system by file name.
    """
    return parse_system(load_bundled(name))


def _example(name: str, alpha: float, beta: float, settings: Settings) -> tuple[str, Any, bool]:
    family = family_from_bundle(name)
    primal = primal_oracle(family, settings=settings)
    dual = solve_dual(family, settings=settings)
    passed = abs(primal.alpha_lower - alpha) <= EXAMPLE_TOL and abs(dual.beta - beta) <= EXAMPLE_TOL

    return f'alpha={alpha:g}, beta={beta:g}', {'alpha': primal.alpha_lower, 'beta': dual.beta}, passed


def _weak_duality(settings: Settings) -> tuple[str, Any, bool]:
    rng = np.random.default_rng(settings.seed)
    violations = 0
    for p in (1.0, 2.0, math.inf):
        for index in range(settings.repro_fuzz):
            family = random_family(rng, p, n=int(rng.integers(1, 7)), s=int(rng.integers(1, 4)))
            report = weak_duality_check(family, budget=200, seed=settings.seed + index, settings=settings)
            violations += not report.ok

    return 'violations=0', {'violations': violations, 'families': 3 * settings.repro_fuzz}, violations == 0


def _metzler_suite(settings: Settings) -> tuple[str, Any, bool]:
    rng = np.random.default_rng(settings.seed + 1)
    worst, failures = 0.0, 0
    for _ in range(settings.repro_families):
        family = random_metzler_family(rng, n=int(rng.integers(2, 6)), s=int(rng.integers(1, 4)))
        try:
            result = metzler_zero_gap(family, settings=settings)
            worst = max(worst, abs(result.alpha - result.beta), abs(result.alpha_open - result.alpha))
        except (DualityGapError, HypothesisViolationError):
            failures += 1

    return f'max gap <= {METZLER_GAP_TOL:g}', {'max_gap': worst, 'failures': failures}, failures == 0


def _yakubovich_suite(settings: Settings) -> tuple[str, Any, bool]:
    rng = np.random.default_rng(settings.seed + 2)
    worst, residual, failures = 0.0, 0.0, 0
    for index in range(settings.repro_families):
        family = random_yakubovich_family(rng, n=int(rng.integers(2, 6)))
        try:
            result = yakubovich_zero_gap(family, settings=settings)
        except (DualityGapError, HypothesisViolationError):
            failures += 1
            continue

        oracle = primal_oracle(family, budget=settings.primal_samples, seed=settings.seed + index, settings=settings)
        worst = max(worst, abs(oracle.alpha_lower - result.beta))
        residual = max(residual, result.complementarity_residual)

    passed = failures == 0 and worst <= YAKUBOVICH_GAP_TOL and residual <= COMPLEMENTARITY_TOL
    observed = {'max_gap': worst, 'max_complementarity': residual, 'failures': failures}

    return f'max gap <= {YAKUBOVICH_GAP_TOL:g}', observed, passed


def _symmetrization_suite(settings: Settings) -> tuple[str, Any, bool]:
    rng = np.random.default_rng(settings.seed + 3)
    mismatches, decided = 0, 0
    for _ in range(settings.repro_fuzz):
        tests = l2_symmetrization_tests(random_scalar_lure(rng, d=int(rng.integers(2, 5))), settings)
        margins = [tests.details['margin_i'], tests.details['margin_ii'], tests.details.get('margin_iii', -1.0)]
        if min(abs(margin) for margin in margins) < DECISION_MARGIN:
            continue

        decided += 1
        mismatches += len({tests.cond_i, tests.cond_ii, tests.cond_iii}) != 1

    return 'mismatches=0', {'mismatches': mismatches, 'decided': decided}, mismatches == 0


def _positive_system(settings: Settings) -> tuple[str, Any, bool]:
    system = system_from_bundle('positive2d.json')
    expected = (5 - math.sqrt(21)) / 2
    metzler = metzler_max_rate(system, p=1, settings=settings)
    dual = max_certified_rate(system, p=1, weight=metzler.certificate.weight, settings=settings)

    edge = system_from_bundle('positive2d_k6.json')
    edge_rate = metzler_max_rate(edge, p=1, settings=settings).c_star

    observed = {'metzler': metzler.c_star, 'lp_dual': dual.c_star, 'kappa_6': edge_rate}
    passed = (
        abs(metzler.c_star - expected) <= RATE_TOL
        and abs(dual.c_star - expected) <= RATE_TOL
        and edge_rate <= RATE_TOL
    )

    return f'c*={expected:.10f}, kappa=6 -> 0', observed, passed


def _circle(settings: Settings) -> tuple[str, Any, bool]:
    system = system_from_bundle('scalar_circle.json')
    verdicts = {
        str(kappa): circle_halfplane(system.replace(sector_hi=kappa), settings).status.is_certified
        for kappa in (0.5, 0.9, 0.999, 1.0, 1.001, 1.5)
    }
    passed = all(verdict == (float(kappa) < 1) for kappa, verdict in verdicts.items())

    return 'certified iff kappa < 1', verdicts, passed


def _oracles(settings: Settings) -> tuple[str, Any, bool]:
    rng = np.random.default_rng(settings.seed + 4)
    worst_lumer, worst_limit, worst_l2, worst_conic = 0.0, 0.0, 0.0, 0.0
    for _ in range(settings.repro_fuzz):
        A = rng.standard_normal((int(rng.integers(1, 9)),) * 2)
        for p in (1.0, math.inf):
            spec = NormSpec(p=p)
            mu = log_norm(A, spec)
            worst_lumer = max(worst_lumer, abs(mu - lumer_enumeration(A, p).value))
            excess = abs(mu - log_norm_limit_estimate(A, spec)) - limit_error_budget(A, spec)
            worst_limit = max(worst_limit, excess)

        worst_l2 = max(worst_l2, abs(log_norm(A, NormSpec(p=2)) - np.linalg.eigvalsh((A + A.T) / 2)[-1]))

        M = np.abs(A) - np.diag(np.abs(np.diag(A))) + np.diag(np.diag(A))
        if is_metzler(M):
            worst_conic = max(worst_conic, abs(log_norm(M, NormSpec(p=1)) - conic_log_norm(M, NormSpec(p=1))))

    observed = {'lumer': worst_lumer, 'limit_excess': worst_limit, 'l2': worst_l2, 'metzler_conic': worst_conic}
    passed = worst_lumer <= 1e-12 and worst_limit <= LIMIT_TOL and worst_l2 <= 1e-10 and worst_conic <= 1e-12

    return 'lumer exact, limit within budget', observed, passed


def _simplex(settings: Settings) -> tuple[str, Any, bool]:
    rng = np.random.default_rng(settings.seed + 6)
    thetas = np.linspace(0.0, 1.0, SEGMENT_POINTS)
    worst_conic, worst_excess, worst_shortfall, worst_bend = 0.0, 0.0, 0.0, 0.0
    for _ in range(settings.repro_families):
        n = int(rng.integers(2, 5))
        M = np.abs(rng.standard_normal((n, n)))
        np.fill_diagonal(M, rng.standard_normal(n))

        mu = log_norm(M, NormSpec(p=1))
        supremum = open_simplex_supremum(M, SIMPLEX_RESOLUTION)
        sums = M.sum(axis=0)
        allowance = (n - 1) / SIMPLEX_RESOLUTION * float(sums.max() - sums.min())
        worst_conic = max(worst_conic, abs(mu - conic_log_norm(M, NormSpec(p=1))))
        worst_excess = max(worst_excess, supremum - mu)
        worst_shortfall = max(worst_shortfall, mu - supremum - allowance)

        for _ in range(SEGMENTS_PER_MATRIX):
            ends = rng.dirichlet(np.ones(n), size=2) * (rng.random((2, n)) < 0.7)
            ends[ends.sum(axis=1) == 0, 0] = 1.0
            ends /= ends.sum(axis=1, keepdims=True)
            values = segment_pairings(np.abs(M), ends[0], ends[1], thetas)
            worst_bend = max(worst_bend, float(np.max(values[:-2] - 2 * values[1:-1] + values[2:])))

    observed = {'conic': worst_conic, 'excess': worst_excess, 'shortfall': worst_shortfall, 'bend': worst_bend}
    passed = max(worst_conic, worst_excess, worst_shortfall, worst_bend) <= SIMPLEX_TOL

    return 'grid supremum -> mu_1 from below, concave along segments', observed, passed


def _simulation(settings: Settings) -> tuple[str, Any, bool]:
    positive = system_from_bundle('positive2d.json')
    metzler = metzler_max_rate(positive, p=math.inf, settings=settings).certificate
    certificates: list[Certificate] = [
        metzler_path(positive, p=1, c=0.2, settings=settings),
        metzler,
        certify_lp_dual(positive, p=1, weight=metzler_path(positive, p=1).weight, c=0.2, settings=settings),
    ]

    circle = system_from_bundle('scalar_circle.json')
    certificates.extend(circle_halfplane(circle.replace(sector_hi=kappa), settings) for kappa in (0.5, 0.9))

    rng = np.random.default_rng(settings.seed + 5)
    for _ in range(3):
        candidate = random_scalar_lure(rng, d=2)
        certificates.append(metzler_path(candidate, p=1, settings=settings))
        certificates.append(certify_l2_schur(candidate, settings=settings))
        certificates.append(certify_l2_symmetrization(candidate, settings=settings))

    trial_settings = Settings.from_sources(overrides={'trials': settings.repro_simulations}, base=settings)
    rows = []
    methods: set[str] = set()
    for certificate in certificates:
        if certificate.status.is_certified:
            rows.extend(validate_certificate(certificate, settings=trial_settings))
            methods.add(certificate.method.value)

    worst = max((max(row.decay, row.contraction or 0.0) for row in rows), default=0.0)
    observed = {
        'certificates': sum(c.status.is_certified for c in certificates),
        'methods': sorted(methods),
        'rows': len(rows),
        'worst': worst,
    }

    return f'ratios <= 1 + {settings.validation_tol:g}', observed, bool(rows) and all(row.passed for row in rows)


def _guarded(name: str, check: Callable[[], tuple[str, Any, bool]]) -> ReproCheck:
    try:
        expected, observed, passed = check()
    except NpslError as error:
        logger.warning('repro check %s raised %s', name, error)
        expected, observed, passed = 'no error', str(error), False

    return ReproCheck(name, expected, observed, passed)


def run_repro(settings: Settings | None = None) -> list[ReproCheck]:
    """
    Run every reproduction check, in parallel when `settings.threads` > 1, and return the rows in a fixed order.

    Args:
        settings (Settings | None, optional): Seed, suite sizes and threads. Default to `Settings.defaults()`.

    Returns:
        list[ReproCheck]: One row per check.
    """
    settings = settings or Settings.defaults()
    checks: list[tuple[str, Callable[[], tuple[str, Any, bool]]]] = [
        ('example_1', lambda: _example('example1.json', 0.0, 1.0, settings)),
        ('example_2a', lambda: _example('example2a.json', 0.0, 0.5, settings)),
        ('example_2b', lambda: _example('example2b.json', 1.0, 1.25, settings)),
        ('weak_duality_fuzz', lambda: _weak_duality(settings)),
        ('metzler_zero_gap', lambda: _metzler_suite(settings)),
        ('yakubovich_zero_gap', lambda: _yakubovich_suite(settings)),
        ('symmetrization_equivalence', lambda: _symmetrization_suite(settings)),
        ('positive_system_rate', lambda: _positive_system(settings)),
        ('circle_criterion', lambda: _circle(settings)),
        ('log_norm_oracles', lambda: _oracles(settings)),
        ('metzler_simplex_oracles', lambda: _simplex(settings)),
        ('certificate_simulation', lambda: _simulation(settings)),
    ]

    if settings.threads > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            futures = [pool.submit(_guarded, name, check) for name, check in checks]
            rows = [future.result() for future in futures]
    else:
        rows = [_guarded(name, check) for name, check in checks]

    for row in rows:
        logger.debug('repro %s: passed=%s', row.name, row.passed)

    return rows
