"""
Settings module.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import asdict, dataclass, fields, replace
from os import environ
from typing import Any

from .exceptions import InputError

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'NPSL_THREADS'

# fields allowed to be zero, everything else numeric must be strictly positive
_NON_NEGATIVE = frozenset({'tol_struct', 'seed', 'reducible_perturbation'})
_SIGNED = frozenset({'unbounded_floor'})


@dataclass(frozen=True, slots=True)
class Settings:
    """
    Every tolerance, budget and knob used by the solvers, certification paths, simulator and command line.

    Values are resolved with precedence command line flags > job file > defaults, see `Settings.from_sources`.

    Example:
    ```python
    from npsl.settings import Settings

    settings = Settings.from_sources(job={'dt': 1e-2}, overrides={'seed': 7})
    print(settings.dt, settings.seed)
    # >>> 0.01 7
    ```
    """

    tol_struct: float = 0.0
    condition_cap: float = 1e12
    perron_tol: float = 1e-10
    perron_max_iter: int = 200_000
    limit_step: float = 1e-6
    sampled_count: int = 2000
    dual_tol: float = 1e-12
    dual_expansion: float = 4.0
    dual_max_doublings: int = 40
    unbounded_floor: float = -1e12
    max_cycles: int = 500
    slack_margin: float = 1e-8
    exact_face_cap: int = 8
    primal_samples: int = 2000
    certify_tol: float = 1e-10
    reverify_slack: float = 1e-9
    rate_tol: float = 1e-8
    metzler_tau: float = 1.0
    strict_irreducible: bool = False
    reducible_perturbation: float = 1e-12
    frequency_points: int = 2000
    frequency_margin: float = 1e-9
    aizerman_grid: int = 201
    dt: float = 1e-3
    horizon: float = 10.0
    trials: int = 10
    validation_tol: float = 1e-3
    seed: int = 0
    threads: int = 1
    debug_checks: bool = False
    repro_fuzz: int = 500
    repro_families: int = 200
    repro_simulations: int = 10

    @classmethod
    def defaults(cls) -> Settings:
        """
        Default settings, with `threads` taken from the NPSL_THREADS environment variable when set.

        Raises:
            InputError: If NPSL_THREADS is not a positive integer.

        Returns:
            Settings: Default settings.
        """
        raw = environ.get(THREADS_VARIABLE)
        if raw is None:
            return cls()

        try:
            threads = int(raw)
        except ValueError:
            raise InputError(f'{THREADS_VARIABLE} must be a positive integer, got <<<{raw}>>>.') from None

        return cls.from_sources(overrides={'threads': threads}, base=cls())

    @classmethod
    def from_sources(
        cls,
        job: Mapping[str, Any] | None = None,
        overrides: Mapping[str, Any] | None = None,
        base: Settings | None = None,
    ) -> Settings:
        """
        Build settings from a job file mapping and command line overrides, the latter taking precedence.

        Args:
            job (Mapping[str, Any] | None, optional): Values read from a job file. Default to None.
            overrides (Mapping[str, Any] | None, optional): Values given on the command line; None entries are
            ignored. Default to None.
            base (Settings | None, optional): Settings to start from. Default to `Settings.defaults()`.

        Raises:
            InputError: On unknown keys, wrongly typed values or non-positive tolerances.

        Returns:
            Settings: The merged settings.
        """
        merged: dict[str, Any] = {}
        for source in (job or {}, overrides or {}):
            merged.update({key: value for key, value in source.items() if value is not None})

        settings = base if base is not None else cls.defaults()
        if not merged:
            return settings

        return replace(settings, **cls._validate(values=merged))

    @classmethod
    def _validate(cls, values: Mapping[str, Any]) -> dict[str, Any]:
        """
        Check names, types and signs of overriding values.

        Args:
            values (Mapping[str, Any]): Raw override values.

        Raises:
            InputError: If a value is invalid.

        Returns:
            dict[str, Any]: Values coerced to the declared field types.
        """
        declared = {field.name: field.type for field in fields(cls)}
        checked: dict[str, Any] = {}

        for key, value in values.items():
            if key not in declared:
                valid = ', '.join(sorted(declared))
                raise InputError(f'Unknown setting <<<{key}>>>. Valid settings are: <<<{valid}>>>.')

            kind = declared[key]
            if kind == 'bool':
                if not isinstance(value, bool):
                    raise InputError(f'Setting <<<{key}>>> must be a boolean, got <<<{value!r}>>>.')
                checked[key] = value
                continue

            if isinstance(value, bool) or not isinstance(value, int | float):
                raise InputError(f'Setting <<<{key}>>> must be a number, got <<<{value!r}>>>.')

            if kind == 'int':
                if int(value) != value:
                    raise InputError(f'Setting <<<{key}>>> must be an integer, got <<<{value!r}>>>.')
                value = int(value)
            else:
                value = float(value)

            if key in _NON_NEGATIVE:
                if value < 0:
                    raise InputError(f'Setting <<<{key}>>> must be non-negative, got <<<{value!r}>>>.')
            elif key not in _SIGNED and value <= 0:
                raise InputError(f'Setting <<<{key}>>> must be positive, got <<<{value!r}>>>.')

            checked[key] = value

        logger.debug('settings overrides: %s', checked)
        return checked

    def to_primitives(self) -> dict[str, Any]:
        """
        Get the settings as a plain dictionary.

        Returns:
            dict[str, Any]: Field name to value.
        """
        return asdict(self)
