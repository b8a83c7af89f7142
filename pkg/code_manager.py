"""
Code Manager for amscheme
Loads code, scheme, point and embedding descriptors from fixtures or explicit paths
"""
import os
import logging
from typing import Any, Dict, List, Optional, Tuple

from block_code import BlockCode, CodeError
from interpolation import EmbeddingError, GridEmbedding, PointSet
from qr_codes import build_extended_qr, build_lifted_golay
from scheme_core import AssociationScheme, SchemeAxiomError, scheme_from_descriptor
from utils.json_storage import load_json
from utils.validators import (
    descriptor_summary,
    validate_code_descriptor,
    validate_embedding_descriptor,
    validate_fixture_name,
    validate_points_descriptor,
    validate_scheme_descriptor,
)

logger = logging.getLogger(__name__)


class CodeManager:
    """
    Resolves code files by path or by fixture name
    """

    def __init__(self, fixtures_dir: str = 'fixtures'):
        """
        Initialize CodeManager

        Args:
            fixtures_dir: Directory holding the shipped code descriptors (default: 'fixtures')
        """
        self.fixtures_dir = fixtures_dir
        logger.debug(f"CodeManager initialized with directory: {self.fixtures_dir}")

    def list_fixtures(self) -> List[Dict[str, Any]]:
        """
        List the code descriptors in the fixtures directory

        Returns:
            List of fixture dictionaries sorted by filename; unreadable files carry an 'error'
        """
        fixtures = []
        if not os.path.isdir(self.fixtures_dir):
            logger.error(f"Fixtures directory does not exist: {self.fixtures_dir}")
            return []

        for filename in sorted(os.listdir(self.fixtures_dir)):
            if not filename.endswith('.json'):
                continue
            try:
                descriptor = self.get_descriptor(filename)
                fixtures.append({
                    'filename': filename,
                    'name': descriptor.get('name', filename[:-5]),
                    'description': descriptor.get('description', descriptor_summary(descriptor)),
                })
            except (FileNotFoundError, ValueError) as e:
                logger.error(f"Error loading fixture {filename}: {e}")
                fixtures.append({'filename': filename, 'name': filename, 'error': str(e)})

        logger.info(f"Listed {len(fixtures)} fixtures from {self.fixtures_dir}")
        return fixtures

    def resolve(self, path_or_name: str) -> str:
        """
        Path of a code file: an existing path is used as is, anything else is a fixture name

        Raises:
            FileNotFoundError: If neither exists
            ValueError: If the fixture name is malformed
        """
        if os.path.isfile(path_or_name):
            return path_or_name
        is_valid, message = validate_fixture_name(path_or_name)
        if not is_valid:
            raise FileNotFoundError(f"'{path_or_name}' is not a file and not a fixture name: {message}")
        safe_name = os.path.basename(path_or_name)
        if not safe_name.endswith('.json'):
            safe_name += '.json'
        filepath = os.path.join(self.fixtures_dir, safe_name)
        if not os.path.exists(filepath):
            raise FileNotFoundError(f"Code '{path_or_name}' not found")
        return filepath

    def get_descriptor(self, path_or_name: str) -> Dict[str, Any]:
        """
        Read and validate a code descriptor

        Raises:
            FileNotFoundError: If the file doesn't exist
            ValueError: If the descriptor is invalid
        """
        filepath = self.resolve(path_or_name)
        data = load_json(filepath)
        is_valid, message = validate_code_descriptor(data)
        if not is_valid:
            raise ValueError(f"{filepath}: {message}")
        return data

    def load_code(self, path_or_name: str) -> BlockCode:
        """
        Build the code a descriptor describes

        Raises:
            FileNotFoundError: If the file doesn't exist
            CodeError: If the descriptor is invalid or describes no valid code
            SchemeAxiomError: If its scheme fails the axioms
        """
        try:
            descriptor = self.get_descriptor(path_or_name)
        except ValueError as e:
            raise CodeError(str(e))
        return code_from_descriptor(descriptor)


def code_from_descriptor(descriptor: Dict[str, Any]) -> BlockCode:
    """
    Build a code from a validated descriptor

    Raises:
        CodeError: On an invalid descriptor
        SchemeAxiomError: If the scheme fails the axioms
    """
    is_valid, message = validate_code_descriptor(descriptor)
    if not is_valid:
        raise CodeError(message)
    scheme = scheme_from_descriptor(descriptor['scheme']) if 'scheme' in descriptor else None
    construction = descriptor.get('construction')
    if construction == 'extended_qr':
        code = build_extended_qr(descriptor['ell'], descriptor['q'], scheme)
    elif construction == 'lifted_golay':
        code = build_lifted_golay(scheme)
    elif 'generators' in descriptor:
        code = BlockCode(scheme, descriptor['n'], generators=descriptor['generators'],
                         name=descriptor.get('name', 'code'))
    else:
        code = BlockCode(scheme, descriptor['n'], words=descriptor['words'],
                         name=descriptor.get('name', 'code'))
    if construction and 'name' in descriptor:
        code.name = descriptor['name']
    logger.info(f"Loaded {code!r}")
    return code


def load_scheme(path: str) -> AssociationScheme:
    """
    Scheme from a descriptor file; code descriptors are accepted and their scheme is used

    Raises:
        FileNotFoundError: If the file doesn't exist
        SchemeAxiomError: On an invalid descriptor or an axiom failure
    """
    try:
        data = load_json(path)
    except ValueError as e:
        raise SchemeAxiomError('DESCRIPTOR', None, str(e))
    if isinstance(data, dict) and isinstance(data.get('scheme'), dict):
        data = data['scheme']
    is_valid, message = validate_scheme_descriptor(data)
    if not is_valid:
        raise SchemeAxiomError('DESCRIPTOR', None, message)
    return scheme_from_descriptor(data)


def load_points(path: str) -> Tuple[PointSet, Optional[GridEmbedding]]:
    """
    Point set and the optional embedding stored beside it under "embedding"

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: On an invalid points file
        EmbeddingError: On an invalid embedding
    """
    data = load_json(path)
    is_valid, message = validate_points_descriptor(data)
    if not is_valid:
        raise ValueError(f"{path}: {message}")
    points = PointSet.from_iterable(data['points'], data.get('dimension'))
    embedding = load_embedding_data(data['embedding']) if 'embedding' in data else None
    return points, embedding


def load_embedding(path: str) -> GridEmbedding:
    return load_embedding_data(load_json(path))


def load_embedding_data(data: Any) -> GridEmbedding:
    is_valid, message = validate_embedding_descriptor(data)
    if not is_valid:
        raise EmbeddingError(message)
    return GridEmbedding.from_dict(data)
