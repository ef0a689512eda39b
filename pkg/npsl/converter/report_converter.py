"""
Report converter module.
"""

import json
import math
from collections.abc import Mapping
from enum import Enum
from typing import Any

import numpy as np


class ReportConverter:
    """
    Render command reports, nested mappings of numbers, strings, arrays, enums and named tuples, as deterministic
    JSON or as aligned text. Infinities are written as the strings "inf" and "-inf", NaN as "nan".

    Example:
    ```python
    from npsl.converter import ReportConverter

    report = {'mu': 1.0, 'mu_conic': float('inf'), 'approximate': False}
    print(ReportConverter.to_json(report=report, pretty=False))
    print(ReportConverter.to_text(report=report))
    # >>> {"approximate": false, "mu": 1.0, "mu_conic": "inf"}
    # >>> approximate  false
    # >>> mu           1.0
    # >>> mu_conic     inf
    ```
    """

    @classmethod
    def to_json(cls, report: Mapping[str, Any], pretty: bool = True) -> str:
        """
        Convert a report to JSON with sorted keys, so that equal reports give byte-identical output.

        Args:
            report (Mapping[str, Any]): Report to convert.
            pretty (bool, optional): Indent the output. Default to True.

        Returns:
            str: The JSON document.
        """
        return json.dumps(cls.to_primitives(report), sort_keys=True, indent=2 if pretty else None, allow_nan=False)

    @classmethod
    def to_text(cls, report: Mapping[str, Any]) -> str:
        """
        Convert a report to aligned "key  value" lines, nested keys joined with dots.

        Args:
            report (Mapping[str, Any]): Report to convert.

        Returns:
            str: The text, one line per leaf.
        """
        leaves = cls._flatten(cls.to_primitives(report), prefix='')
        if not leaves:
            return ''

        width = max(len(key) for key, _ in leaves)
        return '\n'.join(f'{key.ljust(width)}  {cls._text_value(value)}' for key, value in leaves)

    @classmethod
    def to_primitives(cls, value: Any) -> Any:
        """
        Recursively convert a value to JSON-compatible primitives.

        Args:
            value (Any): Value to convert.

        Returns:
            Any: Dicts, lists, strings, finite floats, ints, booleans and None.
        """
        if hasattr(value, 'to_primitives') and not isinstance(value, type):
            return cls.to_primitives(value.to_primitives())

        if isinstance(value, tuple) and hasattr(value, '_asdict'):
            return cls.to_primitives(value._asdict())

        if isinstance(value, Mapping):
            return {str(key): cls.to_primitives(item) for key, item in value.items()}

        if isinstance(value, Enum):
            return value.value

        if isinstance(value, np.ndarray):
            return cls.to_primitives(value.tolist())

        if isinstance(value, list | tuple | set | frozenset):
            items = sorted(value) if isinstance(value, set | frozenset) else value
            return [cls.to_primitives(item) for item in items]

        if isinstance(value, bool | np.bool_):
            return bool(value)

        if isinstance(value, int | np.integer):
            return int(value)

        if isinstance(value, float | np.floating):
            return cls._float(float(value))

        return value

    @staticmethod
    def _float(value: float) -> float | str:
        if math.isnan(value):
            return 'nan'

        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'

        return value

    @classmethod
    def _flatten(cls, value: Any, prefix: str) -> list[tuple[str, Any]]:
        if isinstance(value, dict):
            if not value:
                return [(prefix, {})] if prefix else []
            leaves = []
            for key in sorted(value):
                leaves.extend(cls._flatten(value[key], f'{prefix}.{key}' if prefix else key))
            return leaves

        if isinstance(value, list) and any(isinstance(item, dict) for item in value):
            leaves = []
            for index, item in enumerate(value):
                leaves.extend(cls._flatten(item, f'{prefix}.{index}' if prefix else str(index)))
            return leaves

        return [(prefix, value)]

    @staticmethod
    def _text_value(value: Any) -> str:
        if isinstance(value, bool):
            return 'true' if value else 'false'

        if value is None:
            return 'null'

        if isinstance(value, list | dict):
            return json.dumps(value, sort_keys=True)

        return str(value)
