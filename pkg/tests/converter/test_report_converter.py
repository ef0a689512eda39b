"""
Test ReportConverter class.
"""

import json
import math

import numpy as np
from pytest import mark

from npsl import CertificateStatus, DualStatus
from npsl.converter import ReportConverter
from npsl.simulate import ValidationRow
from tests.mother import LureSystemMother


def test_report_converter_example() -> None:
    """
    Test ReportConverter with a flat report holding an infinity.
    """
    report = {'mu': 1.0, 'mu_conic': math.inf, 'approximate': False}
    expected = '{"approximate": false, "mu": 1.0, "mu_conic": "inf"}'

    assert ReportConverter.to_json(report=report, pretty=False) == expected
    assert ReportConverter.to_text(report=report).splitlines() == [
        'approximate  false',
        'mu           1.0',
        'mu_conic     inf',
    ]


@mark.parametrize(
    'value, expected',
    [
        (-math.inf, '-inf'),
        (float('nan'), 'nan'),
        (np.float64(0.5), 0.5),
        (np.int64(3), 3),
        (np.bool_(True), True),
        (np.array([[1.0, math.inf]]), [[1.0, 'inf']]),
        (CertificateStatus.REFUSED, 'refused'),
        ({2, 1}, [1, 2]),
        ((1, None), [1, None]),
    ],
)
def test_report_converter_to_primitives(value: object, expected: object) -> None:
    """
    Test the conversion of numpy values, enums, containers and non-finite floats.
    """
    assert ReportConverter.to_primitives(value) == expected


def test_report_converter_objects() -> None:
    """
    Test that domain objects and named tuples become plain mappings.
    """
    row = ValidationRow(nonlinearity='saturation(level=1,gain=2)', trial=0, decay=0.5, contraction=None, passed=True)
    system = LureSystemMother.scalar()
    report = ReportConverter.to_primitives({'system': system, 'row': row, 'status': DualStatus.OPTIMAL})

    assert report['system']['A'] == [[-1.0]]
    assert report['row'] == {
        'nonlinearity': 'saturation(level=1,gain=2)',
        'trial': 0,
        'decay': 0.5,
        'contraction': None,
        'passed': True,
    }
    assert report['status'] == DualStatus.OPTIMAL.value


def test_report_converter_json_is_deterministic() -> None:
    """
    Test that equal reports give byte-identical JSON whatever the key order.
    """
    first = ReportConverter.to_json({'b': 1, 'a': {'d': 2.0, 'c': [1, 2]}})
    second = ReportConverter.to_json({'a': {'c': [1, 2], 'd': 2.0}, 'b': 1})

    assert first == second
    assert json.loads(first) == {'a': {'c': [1, 2], 'd': 2.0}, 'b': 1}


def test_report_converter_text_nesting() -> None:
    """
    Test dotted keys for nested mappings and lists of mappings.
    """
    text = ReportConverter.to_text({'checks': [{'name': 'example_1', 'passed': True}], 'tau': [0.5], 'extra': None})

    assert text.splitlines() == [
        'checks.0.name    example_1',
        'checks.0.passed  true',
        'extra            null',
        'tau              [0.5]',
    ]


def test_report_converter_empty_report() -> None:
    """
    Test that an empty report renders as empty text.
    """
    assert ReportConverter.to_text({}) == ''
    assert ReportConverter.to_json({}, pretty=False) == '{}'
