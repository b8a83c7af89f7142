"""
Utility modules for amscheme
"""
from .json_storage import dumps, load_json, read_json, write_json, write_text
from .validators import (
    validate_fixture_name,
    validate_scheme_descriptor,
    validate_code_descriptor,
    validate_points_descriptor,
    validate_embedding_descriptor,
    sanitize_filename,
)

__all__ = [
    'dumps',
    'load_json',
    'read_json',
    'write_json',
    'write_text',
    'validate_fixture_name',
    'validate_scheme_descriptor',
    'validate_code_descriptor',
    'validate_points_descriptor',
    'validate_embedding_descriptor',
    'sanitize_filename',
]
