"""
Test the Settings class.
"""

from typing import Any

from pytest import MonkeyPatch, mark, raises as assert_raises

from npsl import Settings
from npsl.exceptions import InputError


def test_settings_defaults() -> None:
    """
    Test a few default values.
    """
    settings = Settings()

    assert settings.dt == 1e-3
    assert settings.horizon == 10.0
    assert settings.trials == 10
    assert settings.validation_tol == 1e-3
    assert settings.threads == 1


def test_settings_precedence() -> None:
    """
    Test that command line overrides win over the job file and None overrides are ignored.
    """
    settings = Settings.from_sources(job={'dt': 1e-2, 'seed': 3}, overrides={'seed': 7, 'trials': None})

    assert settings.dt == 1e-2
    assert settings.seed == 7
    assert settings.trials == 10


def test_settings_coerces_types() -> None:
    """
    Test that integral floats become ints and ints become floats.
    """
    settings = Settings.from_sources(job={'trials': 4.0, 'dt': 1})

    assert settings.trials == 4
    assert isinstance(settings.trials, int)
    assert isinstance(settings.dt, float)


@mark.parametrize(
    'values',
    [
        {'unknown': 1},
        {'dt': 'fast'},
        {'dt': 0},
        {'trials': 2.5},
        {'seed': -1},
        {'debug_checks': 1},
        {'horizon': True},
    ],
)
def test_settings_invalid_values(values: dict[str, Any]) -> None:
    """
    Test that unknown keys, wrong types and bad signs are rejected.
    """
    with assert_raises(InputError):
        Settings.from_sources(job=values)


def test_settings_signed_field() -> None:
    """
    Test that the unbounded floor may be negative.
    """
    assert Settings.from_sources(job={'unbounded_floor': -1e6}).unbounded_floor == -1e6


def test_settings_threads_from_environment(monkeypatch: MonkeyPatch) -> None:
    """
    Test that the thread count is read from the environment.
    """
    monkeypatch.setenv('NPSL_THREADS', '4')

    assert Settings.defaults().threads == 4


def test_settings_invalid_threads_environment(monkeypatch: MonkeyPatch) -> None:
    """
    Test that a malformed thread count is rejected.
    """
    monkeypatch.setenv('NPSL_THREADS', 'many')

    with assert_raises(InputError):
        Settings.defaults()


def test_settings_to_primitives() -> None:
    """
    Test the plain representation.
    """
    primitives = Settings().to_primitives()

    assert primitives['dt'] == 1e-3
    assert set(primitives) >= {'seed', 'threads', 'repro_fuzz'}
