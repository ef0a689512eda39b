"""
Command line interface: `npsl lognorm|slemma|certify|validate|repro`.

Reports go to stdout as JSON (aligned text with --pretty), logs go to stderr. Exit codes: 0 success, 1 certification
or validation failure, 2 input error.
"""

import json
import logging
import math
import sys
from argparse import ArgumentParser, Namespace
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .certificate import Certificate
from .certificate_method import CertificateMethod
from .certificate_status import CertificateStatus
from .converter import ReportConverter
from .exceptions import HypothesisViolationError, InputError, NpslError, ShapeError
from .job_spec import JobSpec
from .lure import (
    aizerman_scan,
    certify_l2_schur,
    certify_l2_symmetrization,
    certify_lmi,
    certify_lp_dual,
    circle_halfplane,
    max_certified_rate,
    metzler_max_rate,
    metzler_path,
)
from .lure_system import LureSystem
from .nonlinearity import Nonlinearity
from .pairings import conic_log_norm, limit_error_budget, log_norm, log_norm_limit_estimate, log_norm_sampled
from .parser import load_json, parse_certificate, parse_family, parse_job, parse_matrix, parse_norm, parse_system
from .repro import run_repro
from .simulate import integrate, validate_certificate
from .slemma import metzler_zero_gap, primal_oracle, solve_dual, yakubovich_zero_gap
from .transcription import normalize_sector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
SYSTEM_MATCH_TOL = 1e-12

Report = dict[str, Any]


def _weight_argument(text: str | None) -> Any:
    """
    Read --weight as JSON ("[2, 1]" or "[[2, 0], [0, 1]]") or as a comma separated diagonal ("2,1").
    """
    if text is None:
        return None

    try:
        return json.loads(text)
    except json.JSONDecodeError:
        try:
            return [float(item) for item in text.split(',')]
        except ValueError:
            raise InputError(f'Invalid weight <<<{text}>>>.') from None


def _norms_argument(text: str) -> list[Any]:
    """
    Read --p as one exponent or a comma separated list ("1,2,inf"); unparsable items are left for the job parser.
    """
    values: list[Any] = []
    for item in text.split(','):
        try:
            values.append(float(item))
        except ValueError:
            values.append(item.strip())

    return values


def build_parser() -> ArgumentParser:
    """
    Argument parser with one subcommand per operation; the shared flags are accepted on every subcommand.

    Returns:
        ArgumentParser: The parser.
    """
    common = ArgumentParser(add_help=False)
    common.add_argument('--p', help='norm exponents: numbers >= 1 or "inf", comma separated')
    common.add_argument('--weight', help='norm weight as JSON or a comma separated diagonal')
    common.add_argument('--tol', type=float, help='certification tolerance (validation tolerance for validate)')
    common.add_argument('--seed', type=int, help='random seed')
    common.add_argument('--job', help='JSON job file with settings overrides and run options')
    common.add_argument('--pretty', action='store_true', help='aligned text instead of JSON')
    common.add_argument('--show-config', action='store_true', help='print the effective settings and exit')
    common.add_argument('--verbose', action='store_true', help='debug logging on stderr')

    parser = ArgumentParser(prog='npsl', description='Non-polynomial S-Lemma certification toolkit.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command')

    lognorm = commands.add_parser('lognorm', parents=[common], help='log norm of a matrix')
    lognorm.add_argument('file', help='JSON matrix or {"A": matrix}')

    slemma = commands.add_parser('slemma', parents=[common], help='primal and dual values of a form family')
    slemma.add_argument('file', help='JSON form family')

    certify = commands.add_parser('certify', parents=[common], help="certificates for a Lur'e system")
    certify.add_argument('file', help="JSON Lur'e system")
    certify.add_argument('--paths', help='comma separated certification paths')
    certify.add_argument('--rate-search', action='store_true', default=None, help='search the largest rate')
    certify.add_argument('--c', type=float, help='rate to certify without rate search')
    certify.add_argument('--certificate-out', help='write the best certificate to this JSON file')

    validate = commands.add_parser('validate', parents=[common], help='simulate a certified system')
    validate.add_argument('file', help="JSON Lur'e system")
    validate.add_argument('--certificate', help='JSON certificate written by certify')
    validate.add_argument('--trials', type=int, help='pairs of random initial states per nonlinearity')
    validate.add_argument('--dt', type=float, help='integration step')
    validate.add_argument('--horizon', type=float, help='integration horizon')
    validate.add_argument('--trajectory-out', help='write one sample trajectory to this CSV file')

    commands.add_parser('repro', parents=[common], help='reproduce the reference values')

    return parser


def _job(args: Namespace) -> JobSpec:
    """
    Merge the job file and the command line flags, flags first.
    """
    tolerance = 'validation_tol' if args.command == 'validate' else 'certify_tol'
    overrides: dict[str, Any] = {
        'seed': args.seed,
        tolerance: args.tol,
        'trials': getattr(args, 'trials', None),
        'dt': getattr(args, 'dt', None),
        'horizon': getattr(args, 'horizon', None),
        'paths': getattr(args, 'paths', None),
        'rate': getattr(args, 'c', None),
        'rate_search': getattr(args, 'rate_search', None),
        'certificate': getattr(args, 'certificate', None),
        'weight': _weight_argument(args.weight),
    }
    if args.p is not None:
        overrides['norms'] = _norms_argument(args.p)

    return parse_job(load_json(args.job) if args.job else None, overrides=overrides)


def _weight_rows(job: JobSpec) -> Any:
    return None if job.weight is None else job.weight.tolist()


def cmd_lognorm(path: str, job: JobSpec) -> tuple[Report, int]:
    """
    Log norm μ_{p,R} of a matrix for every selected exponent, the conic log norm for p ∈ {1, inf} and the
    limit-definition cross-check. Exponents outside {1, 2, inf} get a sampled lower bound flagged as approximate.

    Args:
        path (str): JSON matrix file.
        job (JobSpec): Norm selections and settings.

    Returns:
        tuple[Report, int]: The report (flat for a single exponent) and the exit code.
    """
    A = parse_matrix(load_json(path), name='A')
    settings = job.settings
    report: Report = {}

    for p in job.norms:
        spec = parse_norm(p, _weight_rows(job))
        if not spec.is_exact:
            mu = log_norm_sampled(spec.similarity(A), p, n_samples=settings.sampled_count, seed=settings.seed)
            report[f'p={p:g}'] = {'p': p, 'mu': mu, 'approximate': True}
            continue

        entry: Report = {'p': p, 'mu': log_norm(A, spec), 'approximate': False}
        if p in (1, math.inf) and spec.diagonal_weight:
            entry['mu_conic'] = conic_log_norm(A, spec)

        entry['limit_estimate'] = log_norm_limit_estimate(A, spec, h=settings.limit_step)
        entry['limit_budget'] = limit_error_budget(A, spec, h=settings.limit_step)
        entry['limit_agrees'] = abs(entry['limit_estimate'] - entry['mu']) <= entry['limit_budget']
        report[f'p={p:g}'] = entry

    if len(report) == 1:
        return next(iter(report.values())), EXIT_OK

    return report, EXIT_OK


def cmd_slemma(path: str, job: JobSpec) -> tuple[Report, int]:
    """
    Primal estimate, dual value and gap of a form family, plus the zero-gap result whose setting matches the family
    (Metzler ℓ1 or one-constraint ℓ2). Violated hypotheses are reported by name.

    Args:
        path (str): JSON form family file.
        job (JobSpec): Settings.

    Returns:
        tuple[Report, int]: The report and the exit code, 1 when a zero-gap assertion fails numerically.
    """
    family = parse_family(load_json(path))
    settings = job.settings
    primal = primal_oracle(family, seed=settings.seed, settings=settings)
    report: Report = {
        'p': family.spec.p,
        'conic': family.conic,
        'alpha_lower': primal.alpha_lower,
        'alpha_exact': primal.exact,
        'witness': primal.witness,
    }

    if not family.spec.is_exact:
        report['dual'] = 'requires p ∈ {1, 2, ∞}'
        return report, EXIT_OK

    dual = solve_dual(family, settings=settings)
    report.update(
        {'beta': dual.beta, 'tau': dual.tau, 'dual_status': dual.status, 'gap': dual.beta - primal.alpha_lower},
    )

    code = EXIT_OK
    try:
        if family.spec.p == 1:
            report['zero_gap'] = metzler_zero_gap(family.with_conic(False), settings=settings)
        elif family.spec.p == 2:
            report['zero_gap'] = yakubovich_zero_gap(family, settings=settings)
        else:
            report['zero_gap'] = {'hypothesis_violated': 'requires p ∈ {1, 2}'}
    except HypothesisViolationError as error:
        report['zero_gap'] = {'hypothesis_violated': error.hypothesis}
    except NpslError as error:
        report['zero_gap'] = {'error': error.message}
        code = EXIT_FAILURE

    return report, code


def _run_paths(system: LureSystem, data: Any, job: JobSpec) -> list[Certificate]:
    """
    One certificate per requested path (and per exponent for the lp_dual and metzler paths).
    """
    settings, c = job.settings, job.rate
    found: list[Certificate] = []

    for method in job.paths:
        match method:
            case CertificateMethod.LP_DUAL:
                for p in job.norms:
                    if job.rate_search:
                        found.append(max_certified_rate(system, p, job.weight, settings=settings).certificate)
                    else:
                        found.append(certify_lp_dual(system, p, job.weight, c=c, settings=settings))
            case CertificateMethod.METZLER:
                for p in job.norms:
                    if job.rate_search:
                        found.append(metzler_max_rate(system, p, settings=settings).certificate)
                    else:
                        found.append(metzler_path(system, p, c=c, settings=settings))
            case CertificateMethod.L2_SCHUR:
                found.append(certify_l2_schur(system, c=c, settings=settings))
            case CertificateMethod.L2_SYMMETRIZATION:
                found.append(certify_l2_symmetrization(system, settings=settings))
            case CertificateMethod.CIRCLE:
                found.append(circle_halfplane(system, settings=settings))
            case CertificateMethod.LMI_VERIFY:
                lmi = data.get('lmi') if isinstance(data, dict) else None
                if not isinstance(lmi, dict):
                    reason = 'requires (H, τ) under "lmi" in the input'
                    found.append(Certificate.refused(method, normalize_sector(system), 2, reason=reason, c=c))
                    continue
                H = parse_matrix(lmi.get('H'), name='H')
                rate = float(lmi.get('c', c))
                found.append(certify_lmi(system, H, float(lmi.get('tau', 0.0)), c=rate, settings=settings))

    return found


def cmd_certify(path: str, job: JobSpec, certificate_out: str | None = None) -> tuple[Report, int]:
    """
    Run the requested certification paths and the Aizerman scan.

    Args:
        path (str): JSON Lur'e system file, optionally with an "lmi" object holding H, tau and c.
        job (JobSpec): Paths, exponents, rate or rate search, weight and settings.
        certificate_out (str | None, optional): File for the best issued certificate. Default to None.

    Returns:
        tuple[Report, int]: One row per certificate and the scan verdict; exit code 0 iff some certificate is issued.
    """
    data = load_json(path)
    system = parse_system(data)
    found = _run_paths(system, data, job)

    rows = []
    for certificate in found:
        row: Report = {
            'method': certificate.method,
            'p': certificate.p,
            'status': certificate.status,
            'c': certificate.c,
            'tau': certificate.tau,
            'weight': certificate.weight,
        }
        if 'reason' in certificate.diagnostics:
            row['reason'] = certificate.diagnostics['reason']
        rows.append(row)

    report: Report = {'system': system, 'certificates': rows}
    if np.all(np.isfinite(system.sector_lo)) and np.all(np.isfinite(system.sector_hi)):
        report['aizerman_scan'] = aizerman_scan(system, settings=job.settings)
    else:
        report['aizerman_scan'] = 'requires finite ζ and ϰ'

    certified = [certificate for certificate in found if certificate.status.is_certified]
    if certified and certificate_out is not None:
        best = max(certified, key=lambda item: (item.c, item.status is CertificateStatus.CERTIFIED_EXACT))
        Path(certificate_out).write_text(ReportConverter.to_json(best) + '\n', encoding='utf-8')
        report['certificate_out'] = certificate_out

    return report, EXIT_OK if certified else EXIT_FAILURE


def _same_system(given: LureSystem, certified: LureSystem) -> bool:
    normalized = normalize_sector(given)
    pairs = [
        (normalized.A, certified.A),
        (normalized.B, certified.B),
        (normalized.C, certified.C),
        (normalized.sector_lo, certified.sector_lo),
        (normalized.sector_hi, certified.sector_hi),
    ]

    return all(
        left.shape == right.shape and np.allclose(left, right, rtol=0.0, atol=SYSTEM_MATCH_TOL)
        for left, right in pairs
    )


def cmd_validate(path: str, job: JobSpec, trajectory_out: str | None = None) -> tuple[Report, int]:
    """
    Simulate the system under a certificate with in-class nonlinearities and tabulate decay and contraction ratios.

    Args:
        path (str): JSON Lur'e system file.
        job (JobSpec): Certificate file, nonlinearities and simulation settings.
        trajectory_out (str | None, optional): CSV file for one sample trajectory. Default to None.

    Raises:
        InputError: Without a certificate, or when the certificate speaks about another system.

    Returns:
        tuple[Report, int]: The ratio table; exit code 1 if some ratio exceeds 1 + tol.
    """
    if job.certificate is None:
        raise InputError('validate needs a certificate (--certificate or "certificate" in the job file).')

    system = parse_system(load_json(path))
    certificate = parse_certificate(load_json(job.certificate))
    if not _same_system(system, certificate.system):
        raise InputError(f'Certificate <<<{job.certificate}>>> does not match system <<<{path}>>>.')

    settings = job.settings
    nonlinearities = list(job.nonlinearities) or None
    rows = validate_certificate(certificate, nonlinearities=nonlinearities, settings=settings)

    if trajectory_out is not None:
        lo, hi = certificate.system.original_sector()
        phi = (nonlinearities or Nonlinearity.in_class(float(np.max(lo)), float(np.min(hi))))[0]
        z0 = np.ones(system.state_dimension)
        integrate(certificate.system, phi, z0, settings=settings).to_csv(trajectory_out)

    passed = all(row.passed for row in rows)
    report: Report = {
        'method': certificate.method,
        'p': certificate.p,
        'c': certificate.c,
        'verified': certificate.verify(slack=settings.reverify_slack, settings=settings),
        'tolerance': settings.validation_tol,
        'passed': passed,
        'rows': rows,
    }

    return report, EXIT_OK if passed else EXIT_FAILURE


def cmd_repro(job: JobSpec) -> tuple[Report, int]:
    """
    Run the reproduction suite.

    Returns:
        tuple[Report, int]: Pass/fail table; exit code 0 iff every check passes.
    """
    rows = run_repro(job.settings)
    passed = all(row.passed for row in rows)

    return {'passed': passed, 'checks': rows}, EXIT_OK if passed else EXIT_FAILURE


def _dispatch(args: Namespace, job: JobSpec) -> tuple[Report, int]:
    match args.command:
        case 'lognorm':
            return cmd_lognorm(args.file, job)
        case 'slemma':
            return cmd_slemma(args.file, job)
        case 'certify':
            return cmd_certify(args.file, job, certificate_out=args.certificate_out)
        case 'validate':
            return cmd_validate(args.file, job, trajectory_out=args.trajectory_out)
        case _:
            return cmd_repro(job)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Entry point of the `npsl` command.

    Args:
        argv (Sequence[str] | None, optional): Arguments without the program name. Default to sys.argv[1:].

    Returns:
        int: Exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        job = _job(args)
        if args.show_config:
            print(ReportConverter.to_json(job.settings))
            return EXIT_OK

        report, code = _dispatch(args, job)
    except (InputError, ShapeError) as error:
        logger.error('%s', error.message)
        return EXIT_INPUT
    except ValueError as error:
        logger.error('%s', error)
        return EXIT_INPUT
    except NpslError as error:
        logger.error('%s', error.message)
        return EXIT_FAILURE

    print(ReportConverter.to_text(report) if args.pretty else ReportConverter.to_json(report))
    return code
