"""
JSON file storage utilities for amscheme
Provides safe read/write operations for descriptors, fixtures and reports
"""
import json
import logging
import os
import shutil
import tempfile
from fractions import Fraction
from typing import Any

logger = logging.getLogger(__name__)


class ExactEncoder(json.JSONEncoder):
    """Fractions become '3/5' strings; objects with to_dict() serialize through it."""

    def default(self, o: Any) -> Any:
        if isinstance(o, Fraction):
            return str(o.numerator) if o.denominator == 1 else f"{o.numerator}/{o.denominator}"
        if hasattr(o, 'to_dict'):
            return o.to_dict()
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        return super().default(o)


def dumps(data: Any) -> str:
    """Deterministic rendering used for reports on stdout and on disk."""
    return json.dumps(data, indent=2, ensure_ascii=False, cls=ExactEncoder)


def read_json(filepath: str, default: Any = None) -> Any:
    """
    Safely read a JSON file

    Args:
        filepath: Path to the JSON file
        default: Default value to return if file doesn't exist or is invalid

    Returns:
        Parsed JSON data or default value
    """
    if default is None:
        default = {}

    try:
        if not os.path.exists(filepath):
            return default

        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (json.JSONDecodeError, IOError) as e:
        logger.error(f"Error reading JSON file {filepath}: {e}")
        return default


def load_json(filepath: str) -> Any:
    """
    Read a JSON file that must exist

    Raises:
        FileNotFoundError: If the file is missing
        ValueError: If the file is not valid JSON
    """
    if not os.path.exists(filepath):
        raise FileNotFoundError(f"File '{filepath}' not found")
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"{filepath} is not valid JSON: {e}")


def write_json(filepath: str, data: Any) -> bool:
    """
    Safely write data to a JSON file using atomic write

    Args:
        filepath: Path to the JSON file
        data: Data to write (JSON serializable, Fractions and to_dict() objects allowed)

    Returns:
        True if successful, False otherwise
    """
    try:
        os.makedirs(os.path.dirname(filepath) if os.path.dirname(filepath) else '.', exist_ok=True)

        with tempfile.NamedTemporaryFile('w', delete=False,
                                         dir=os.path.dirname(filepath) or '.',
                                         encoding='utf-8') as tmp_file:
            tmp_filename = tmp_file.name
            tmp_file.write(dumps(data))
            tmp_file.write('\n')
            tmp_file.flush()
            os.fsync(tmp_file.fileno())

        shutil.move(tmp_filename, filepath)
        logger.debug(f"Wrote {filepath}")
        return True

    except (IOError, OSError, TypeError, ValueError) as e:
        logger.error(f"Error writing JSON file {filepath}: {e}")
        if 'tmp_filename' in locals() and os.path.exists(tmp_filename):
            try:
                os.remove(tmp_filename)
            except OSError:
                pass
        return False


def write_text(filepath: str, text: str) -> bool:
    """Atomic write of a rendered text report."""
    try:
        os.makedirs(os.path.dirname(filepath) if os.path.dirname(filepath) else '.', exist_ok=True)
        with tempfile.NamedTemporaryFile('w', delete=False, dir=os.path.dirname(filepath) or '.',
                                         encoding='utf-8') as tmp_file:
            tmp_filename = tmp_file.name
            tmp_file.write(text)
        shutil.move(tmp_filename, filepath)
        return True
    except (IOError, OSError) as e:
        logger.error(f"Error writing {filepath}: {e}")
        if 'tmp_filename' in locals() and os.path.exists(tmp_filename):
            os.remove(tmp_filename)
        return False
