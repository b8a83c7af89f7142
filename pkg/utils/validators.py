"""
Validation utilities for amscheme
Checks scheme, code, point and embedding descriptors before anything is built
"""
import os
import re
from typing import Any, Dict, Sequence, Tuple

from utils.type_converter import convert_exact

SCHEME_TYPES = {
    'group': ('factors',),
    'cycle': ('k',),
    'trivial': ('q',),
    'table': ('relation',),
}
CONSTRUCTIONS = ('extended_qr', 'lifted_golay')


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_fixture_name(name: str) -> Tuple[bool, str]:
    """
    Validate a fixture name as given on the command line

    Args:
        name: Fixture name with or without the .json suffix

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not name:
        return False, "Fixture name cannot be empty"
    if len(name) > 100:
        return False, "Fixture name too long (max 100 characters)"
    if not re.match(r'^[a-zA-Z0-9_\-]+(\.json)?$', name):
        return False, "Fixture name can only contain letters, numbers, hyphens and underscores"
    return True, ""


def validate_scheme_descriptor(data: Any) -> Tuple[bool, str]:
    """
    Validate a scheme descriptor: {"type": "group"|"cycle"|"trivial"|"table", ...}

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(data, dict):
        return False, "Scheme descriptor must be an object"
    kind = data.get('type')
    if kind not in SCHEME_TYPES:
        return False, f"Unknown scheme type {kind!r}; expected one of {', '.join(SCHEME_TYPES)}"
    missing = [key for key in SCHEME_TYPES[kind] if key not in data]
    if missing:
        return False, f"Scheme of type {kind!r} is missing {', '.join(missing)}"
    if kind == 'group':
        factors = data['factors']
        if not isinstance(factors, list) or not factors or not all(_is_int(f) and f >= 2 for f in factors):
            return False, "Group factors must be a non-empty list of integers >= 2"
    if kind == 'cycle' and not (_is_int(data['k']) and data['k'] >= 3):
        return False, "Cycle schemes need an integer k >= 3"
    if kind == 'trivial' and not (_is_int(data['q']) and data['q'] >= 2):
        return False, "Trivial schemes need an integer q >= 2"
    if kind == 'table':
        table = data['relation']
        if not isinstance(table, list) or not table:
            return False, "Relation table must be a non-empty list of rows"
        size = len(table)
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != size:
                return False, f"Relation row {i} must have {size} entries"
            if not all(_is_int(v) and v >= 0 for v in row):
                return False, f"Relation row {i} must hold non-negative integer labels"
    if 'group' in data:
        group = data['group']
        if not isinstance(group, list) or not all(_is_int(f) and f >= 2 for f in group):
            return False, "Optional group must be a list of integers >= 2"
    return True, ""


def _validate_rows(rows: Any, n: int, label: str) -> Tuple[bool, str]:
    if not isinstance(rows, list) or not rows:
        return False, f"{label} must be a non-empty list of words"
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            return False, f"{label} row {i} must have length {n}"
        if not all(_is_int(x) and x >= 0 for x in row):
            return False, f"{label} row {i} must hold non-negative integer symbols"
    return True, ""


def validate_code_descriptor(data: Any) -> Tuple[bool, str]:
    """
    Validate a code descriptor

    Either {"construction": "extended_qr", "ell": 11, "q": 3} / {"construction": "lifted_golay"}
    or {"scheme": {...}, "n": N, "generators" | "words": [[...], ...]}; "name" and
    "scheme" are optional on constructions.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(data, dict):
        return False, "Code descriptor must be an object"
    if 'name' in data and not isinstance(data['name'], str):
        return False, "Code name must be a string"
    if 'scheme' in data:
        is_valid, message = validate_scheme_descriptor(data['scheme'])
        if not is_valid:
            return False, f"Invalid scheme: {message}"
    construction = data.get('construction')
    if construction is not None:
        if construction not in CONSTRUCTIONS:
            return False, f"Unknown construction {construction!r}; expected one of {', '.join(CONSTRUCTIONS)}"
        if construction == 'extended_qr':
            for key in ('ell', 'q'):
                if not _is_int(data.get(key)):
                    return False, f"extended_qr needs an integer {key!r}"
        return True, ""
    if 'scheme' not in data:
        return False, "Code descriptor needs a scheme or a construction"
    n = data.get('n')
    if not _is_int(n) or n < 1:
        return False, "Code length n must be a positive integer"
    has_generators, has_words = 'generators' in data, 'words' in data
    if has_generators == has_words:
        return False, "Give exactly one of 'generators' and 'words'"
    return _validate_rows(data['generators' if has_generators else 'words'], n,
                          'Generator' if has_generators else 'Word')


def validate_points_descriptor(data: Any) -> Tuple[bool, str]:
    """
    Validate {"points": [[...], ...], "dimension"?: s}; coordinates are integers or rational strings

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(data, dict):
        return False, "Points file must be an object"
    points = data.get('points')
    if not isinstance(points, list):
        return False, "Points file needs a 'points' list"
    dimension = data.get('dimension')
    if dimension is not None and not (_is_int(dimension) and dimension >= 1):
        return False, "Dimension must be a positive integer"
    if not points and dimension is None:
        return False, "An empty point set needs an explicit dimension"
    for i, point in enumerate(points):
        is_valid, message = validate_exact_row(point)
        if not is_valid:
            return False, f"Point {i}: {message}"
    lengths = {len(p) for p in points}
    if dimension is not None:
        lengths.add(dimension)
    if len(lengths) > 1:
        return False, f"Points have mixed dimensions {sorted(lengths)}"
    return True, ""


def validate_exact_row(values: Any) -> Tuple[bool, str]:
    if not isinstance(values, list) or not values:
        return False, "expected a non-empty list of coordinates"
    for value in values:
        try:
            convert_exact(value)
        except ValueError as e:
            return False, str(e)
    return True, ""


def validate_embedding_descriptor(data: Any) -> Tuple[bool, str]:
    """
    Validate {"sigma": [[...]], "nodes": [[...], ...], "m": M}

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(data, dict):
        return False, "Embedding must be an object"
    for key in ('sigma', 'nodes', 'm'):
        if key not in data:
            return False, f"Embedding is missing {key!r}"
    if not _is_int(data['m']) or data['m'] < 0:
        return False, "Degree bound m must be a non-negative integer"
    for label in ('sigma', 'nodes'):
        rows = data[label]
        if not isinstance(rows, list) or not rows:
            return False, f"{label} must be a non-empty list of rows"
        for i, row in enumerate(rows):
            is_valid, message = validate_exact_row(row)
            if not is_valid:
                return False, f"{label} row {i}: {message}"
    return True, ""


def validate_base_vertex(base: Sequence[Any], n: int, size: int) -> Tuple[bool, str]:
    if len(base) != n:
        return False, f"Base vertex has length {len(base)}, code length is {n}"
    if not all(_is_int(x) and 0 <= x < size for x in base):
        return False, f"Base vertex symbols must lie in 0..{size - 1}"
    return True, ""


def sanitize_filename(filename: str) -> str:
    """
    Sanitize a report filename to prevent directory traversal

    Args:
        filename: Filename to sanitize

    Returns:
        Sanitized filename
    """
    filename = os.path.basename(filename)
    filename = re.sub(r'[^a-zA-Z0-9_\-\.]', '_', filename)
    filename = filename.lstrip('.')
    if not filename:
        filename = 'report'
    return filename


def descriptor_summary(data: Dict[str, Any]) -> str:
    """One-line description of a code descriptor for fixture listings."""
    if 'construction' in data:
        if data['construction'] == 'extended_qr':
            ell = data.get('ell')
            length = ell + 1 if _is_int(ell) else '?'
            return f"extended QR code, length {length} over F_{data.get('q', '?')}"
        return "lifted Golay code over Z_4"
    rows = data.get('generators') or data.get('words') or []
    kind = 'generators' if 'generators' in data else 'words'
    return f"length {data.get('n', '?')}, {len(rows)} {kind}, {data.get('scheme', {}).get('type', '?')} scheme"
