"""
Type Converter Utility
Converts loosely typed values from JSON files, environment variables and CLI flags
into exact Python values
"""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence

logger = logging.getLogger(__name__)


def convert_exact(value: Any) -> Fraction:
    """
    Convert an int, Fraction or rational string ('3', '-2/5', '0.25') to a Fraction.

    Floats are refused: a float coordinate has already lost exactness.

    Args:
        value: Value to convert

    Returns:
        Exact Fraction

    Raises:
        ValueError: If the value is not an exact rational
    """
    if isinstance(value, bool):
        raise ValueError(f"Boolean {value!r} is not a rational number")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("Empty string is not a rational number")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Cannot read {value!r} as a rational number: {e}")
    if isinstance(value, float):
        raise ValueError(f"Float {value!r} is not exact; write it as a string such as '1/3'")
    raise ValueError(f"Cannot read {type(value).__name__} {value!r} as a rational number")


def convert_point(values: Sequence[Any]) -> tuple:
    """Tuple of Fractions from a sequence of exact values."""
    if isinstance(values, (str, bytes)) or not isinstance(values, Sequence):
        raise ValueError(f"A point must be a list of coordinates, got {values!r}")
    return tuple(convert_exact(v) for v in values)


def convert_matrix(rows: Sequence[Sequence[Any]]) -> List[List[Fraction]]:
    matrix = [list(convert_point(row)) for row in rows]
    if matrix and any(len(row) != len(matrix[0]) for row in matrix):
        raise ValueError("Matrix rows have different lengths")
    return matrix


def format_exact(value: Any) -> str:
    """'3', '-2/5'; the inverse of convert_exact on strings."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def convert_variable_types(variables: Dict[str, Any]) -> Dict[str, Any]:
    """
    Convert string values to int, bool or Fraction where they clearly are one.

    Conversion rules:
    - Integer strings ('123', '-4') -> int
    - Boolean-like strings ('true', 'false', 'yes', 'no', 'on', 'off') -> bool
    - Rational strings ('3/5') -> Fraction
    - Other strings remain as strings

    Args:
        variables: Dictionary of variables (typically environment overrides)

    Returns:
        Dictionary with type-converted variables
    """
    converted = {}
    for key, value in variables.items():
        if not isinstance(value, str):
            converted[key] = value
            continue
        converted_value = _convert_string_value(value)
        converted[key] = converted_value
        if type(converted_value) != type(value):
            logger.debug(f"Converted variable '{key}': '{value}' -> {converted_value!r}")
    return converted


def _convert_string_value(value: str) -> Any:
    if not value:
        return value
    # integers first so that '1' stays a count
    try:
        return int(value)
    except ValueError:
        pass
    bool_value = try_convert_to_bool(value)
    if bool_value is not None:
        return bool_value
    if '/' in value:
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            pass
    return value


def try_convert_to_bool(value: str) -> bool | None:
    """
    Recognizes 'true', 'false', 'yes', 'no', 'on', 'off', '1', '0' (case-insensitive).

    Returns:
        Boolean value or None if not a boolean string
    """
    value_lower = value.lower().strip()
    if value_lower in ('1', 'true', 'yes', 'on'):
        return True
    if value_lower in ('0', 'false', 'no', 'off'):
        return False
    return None
