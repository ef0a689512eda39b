"""
This module contains the parser functions for the JSON inputs of the command line: matrices, Lur'e systems, form
families, certificates, nonlinearities and job files. Extended reals are written as numbers or the strings "inf" and
"-inf".
"""

import json
import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np

from .certificate import Certificate
from .certificate_method import CertificateMethod
from .core_linalg import Matrix, as_matrix
from .exceptions import InputError, NpslError, ShapeError
from .form_family import FormFamily
from .job_spec import DEFAULT_PATHS, JobSpec
from .lure_system import LureSystem
from .nonlinearity import Nonlinearity
from .nonlinearity_kind import NonlinearityKind
from .norm_spec import NormSpec
from .settings import Settings

_JOB_FIELDS = frozenset(
    {'input', 'command', 'certificate', 'norms', 'weight', 'paths', 'rate', 'rate_search', 'nonlinearities'},
)
_EXTENDED = {'inf': math.inf, '+inf': math.inf, 'infinity': math.inf, '-inf': -math.inf, '-infinity': -math.inf}


def load_json(path: str | Path) -> Any:
    """
    Read a JSON file.

    Args:
        path (str | Path): File to read.

    Raises:
        InputError: If the file cannot be read or is not valid JSON, with the line and column of the syntax error.

    Returns:
        Any: The decoded document.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as error:
        raise InputError(f'Cannot read <<<{path}>>>: {error.strerror}.') from None

    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        raise InputError(f'Invalid JSON in <<<{path}>>>: {error.msg}', line=error.lineno, column=error.colno) from None


def _extended(value: Any, name: str) -> float:
    """
    Convert a number or an infinity string to float.
    """
    if isinstance(value, str):
        key = value.strip().lower()
        if key not in _EXTENDED:
            raise InputError(f'Field <<<{name}>>> must be a number, "inf" or "-inf", got <<<{value!r}>>>.')
        return _EXTENDED[key]

    if isinstance(value, bool) or not isinstance(value, int | float):
        raise InputError(f'Field <<<{name}>>> must be a number, got <<<{value!r}>>>.')

    return float(value)


def _extended_list(value: Any, name: str) -> float | list[float]:
    if isinstance(value, list):
        return [_extended(item, f'{name}[{index}]') for index, item in enumerate(value)]

    return _extended(value, name)


def _require(data: Any, key: str, context: str) -> Any:
    if not isinstance(data, Mapping):
        raise InputError(f'<<<{context}>>> must be a JSON object.')

    if key not in data:
        raise InputError(f'<<<{context}>>> is missing field <<<{key}>>>.')

    return data[key]


def parse_matrix(data: Any, name: str = 'matrix') -> Matrix:
    """
    Parse a nested list of numbers, or an object holding one under "A" or "matrix".

    Args:
        data (Any): Decoded JSON.
        name (str, optional): Name used in messages. Default to 'matrix'.

    Raises:
        InputError: If the value is not a finite rectangular matrix.

    Returns:
        Matrix: The matrix.

    Example:
    ```python
    from npsl.parser import parse_matrix

    print(parse_matrix({'A': [[-2, 1], [3, -4]]}).tolist())
    # >>> [[-2.0, 1.0], [3.0, -4.0]]
    ```
    """
    if isinstance(data, Mapping):
        key = 'A' if 'A' in data else 'matrix'
        data = _require(data, key, name)

    try:
        return as_matrix(data, name=name)
    except (ShapeError, TypeError, ValueError) as error:
        raise InputError(f'Invalid <<<{name}>>>: {error}') from None


def parse_weight(data: Any) -> Matrix | None:
    """
    Parse a norm weight: null for the identity, a list of numbers for a diagonal weight, a nested list for a full one.
    """
    if data is None:
        return None

    if isinstance(data, list) and data and all(isinstance(item, int | float) for item in data):
        return np.diag(np.asarray(data, dtype=np.float64))

    return parse_matrix(data, name='weight')


def parse_norm(p: Any, weight: Any = None) -> NormSpec:
    """
    Parse an exponent and a weight into a NormSpec.

    Raises:
        InputError: If p is not in [1, inf] or the weight is invalid.
    """
    exponent = _extended(p, 'p')
    try:
        return NormSpec(p=exponent, weight=parse_weight(weight))
    except (NpslError, ValueError) as error:
        raise InputError(f'Invalid norm: {error}') from None


def parse_system(data: Any) -> LureSystem:
    """
    Parse {"A", "B", "C", "zeta", "kappa"} into a LureSystem; zeta defaults to 0 and kappa to inf.

    Args:
        data (Any): Decoded JSON.

    Raises:
        InputError: On missing fields, bad values or incompatible shapes.

    Returns:
        LureSystem: The system as given, not normalized.
    """
    A = _require(data, 'A', 'system')
    B = _require(data, 'B', 'system')
    C = _require(data, 'C', 'system')

    try:
        return LureSystem(
            A=A,
            B=B,
            C=C,
            sector_lo=_extended_list(data.get('zeta', 0.0), 'zeta'),
            sector_hi=_extended_list(data.get('kappa', math.inf), 'kappa'),
        )
    except (ShapeError, TypeError, ValueError) as error:
        raise InputError(f'Invalid system: {error}') from None


def parse_family(data: Any) -> FormFamily:
    """
    Parse {"forms", "rho", "p", "weight", "conic"} into a FormFamily; p defaults to 2.

    Raises:
        InputError: On missing forms, bad values or incompatible shapes.
    """
    forms = _require(data, 'forms', 'family')
    spec = parse_norm(data.get('p', 2), data.get('weight'))

    try:
        return FormFamily(forms=forms, rho=data.get('rho'), spec=spec, conic=bool(data.get('conic', False)))
    except (ShapeError, TypeError, ValueError) as error:
        raise InputError(f'Invalid family: {error}') from None


def parse_certificate(data: Any) -> Certificate:
    """
    Parse the JSON form of a certificate, as written by the certify command.

    Raises:
        InputError: On missing fields or unknown tags.
    """
    system = dict(_require(data, 'system', 'certificate'))
    system['zeta'] = _extended_list(system.get('zeta', 0.0), 'zeta')
    system['kappa'] = _extended_list(system.get('kappa', math.inf), 'kappa')

    decoded = dict(data)
    decoded['system'] = system
    decoded['p'] = _extended(_require(data, 'p', 'certificate'), 'p')

    return Certificate.from_primitives(decoded)


def _convert_kind(kind: str) -> NonlinearityKind:
    """
    Convert a kind string from JSON to NonlinearityKind.

    Raises:
        InputError: If the kind is not recognized.
    """
    kind_map = {
        'linear_gain': NonlinearityKind.LINEAR_GAIN,
        'linear': NonlinearityKind.LINEAR_GAIN,
        'saturation': NonlinearityKind.SATURATION,
        'deadzone': NonlinearityKind.DEADZONE,
        'scaled_tanh': NonlinearityKind.SCALED_TANH,
        'tanh': NonlinearityKind.SCALED_TANH,
        'pw_linear': NonlinearityKind.PW_LINEAR,
        'switched': NonlinearityKind.SWITCHED,
    }

    if kind not in kind_map:
        raise InputError(f'Unknown nonlinearity kind <<<{kind}>>>.')

    return kind_map[kind]


def parse_nonlinearity(data: Any) -> Nonlinearity:
    """
    Parse a nonlinearity object such as {"kind": "saturation", "level": 1, "gain": 2}. Switched nonlinearities list
    their "members" and "times".

    Raises:
        InputError: On unknown kinds or missing or invalid parameters.
        NonlinearityDeclarationError: If a declared bound does not hold on the validation grid.
    """
    kind = _convert_kind(_require(data, 'kind', 'nonlinearity'))

    try:
        match kind:
            case NonlinearityKind.LINEAR_GAIN:
                return Nonlinearity.linear_gain(float(_require(data, 'k', 'linear_gain')))
            case NonlinearityKind.SATURATION:
                return Nonlinearity.saturation(float(_require(data, 'level', 'saturation')), float(data.get('gain', 1)))
            case NonlinearityKind.DEADZONE:
                return Nonlinearity.deadzone(float(_require(data, 'width', 'deadzone')), float(data.get('slope', 1)))
            case NonlinearityKind.SCALED_TANH:
                return Nonlinearity.scaled_tanh(float(_require(data, 'gain', 'scaled_tanh')))
            case NonlinearityKind.PW_LINEAR:
                return Nonlinearity.pw_linear(_require(data, 'table', 'pw_linear'))
            case NonlinearityKind.SWITCHED:
                members = [parse_nonlinearity(member) for member in _require(data, 'members', 'switched')]
                return Nonlinearity.switched(members, _require(data, 'times', 'switched'))
    except (TypeError, ValueError) as error:
        raise InputError(f'Invalid <<<{kind.value}>>> nonlinearity: {error}') from None

    raise InputError(f'Unsupported nonlinearity kind <<<{kind.value}>>>.')  # pragma: no cover


def _convert_paths(paths: Any) -> tuple[CertificateMethod, ...]:
    if isinstance(paths, str):
        paths = [item for item in paths.split(',') if item.strip()]

    if not isinstance(paths, list):
        raise InputError('Field <<<paths>>> must be a list or a comma separated string.')

    try:
        return tuple(CertificateMethod(item.strip()) for item in paths)
    except (AttributeError, ValueError):
        valid = ', '.join(method.value for method in CertificateMethod)
        raise InputError(f'Unknown certification path in <<<{paths}>>>. Valid paths are: <<<{valid}>>>.') from None


def parse_job(data: Any, overrides: Mapping[str, Any] | None = None, base: Settings | None = None) -> JobSpec:
    """
    Parse a job file: the fields input, command, certificate, norms, weight, paths, rate, rate_search and
    nonlinearities, every other key being a settings override. Command line overrides take precedence over the file
    for both.

    Args:
        data (Any): Decoded job file, or None for an empty job.
        overrides (Mapping[str, Any] | None, optional): Command line values; None entries are ignored. Default to
        None.
        base (Settings | None, optional): Settings to start from. Default to `Settings.defaults()`.

    Raises:
        InputError: On invalid fields or settings.

    Returns:
        JobSpec: The job.
    """
    if not isinstance(data or {}, Mapping):
        raise InputError('A job file must be a JSON object.')

    job = dict(data or {})

    given = {key: value for key, value in (overrides or {}).items() if value is not None}
    fields = {key: given.pop(key, job.get(key)) for key in _JOB_FIELDS}
    settings = Settings.from_sources(
        job={key: value for key, value in job.items() if key not in _JOB_FIELDS},
        overrides=given,
        base=base,
    )

    norms = fields['norms']
    if norms is not None and not isinstance(norms, list):
        norms = [norms]

    nonlinearities = fields['nonlinearities'] or []
    if not isinstance(nonlinearities, list):
        raise InputError('Field <<<nonlinearities>>> must be a list.')

    return JobSpec(
        input=fields['input'],
        command=fields['command'],
        certificate=fields['certificate'],
        norms=(1.0, 2.0, math.inf) if norms is None else tuple(_extended(p, 'norms') for p in norms),
        weight=parse_weight(fields['weight']),
        paths=DEFAULT_PATHS if fields['paths'] is None else _convert_paths(fields['paths']),
        rate=0.0 if fields['rate'] is None else _extended(fields['rate'], 'rate'),
        rate_search=bool(fields['rate_search']),
        nonlinearities=tuple(parse_nonlinearity(item) for item in nonlinearities),
        settings=settings,
    )
