"""
Command Helpers for amscheme
Shared argument parsing, run configuration and report output for the subcommands
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

from block_code import CodeError, EnumerationCapError, EnumerationSettings
from code_manager import CodeManager
from design_verify import DesignError
from enumerators import TransformInvariantError
from extension import Composition, parse_composition
from interpolation import EmbeddingError, InterpolationError
from report_renderer import ReportRenderer
from scheme_core import NonRationalSchemeError, SchemeAxiomError
from utils.json_storage import write_text
from utils.validators import sanitize_filename

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TARGET_NOT_MET = 1
EXIT_INPUT_ERROR = 2

# Failures that mean the input (or a resource limit) is wrong, not the mathematics
INPUT_ERRORS = (
    FileNotFoundError,
    CodeError,
    SchemeAxiomError,
    NonRationalSchemeError,
    EnumerationCapError,
    EmbeddingError,
    InterpolationError,
    TransformInvariantError,
    DesignError,
    ValueError,
)


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--json', action='store_true', help='machine-readable JSON report')
    parser.add_argument('--output', '-o', metavar='FILE', help='write the report to FILE instead of stdout')


def output_format(args: argparse.Namespace, config) -> str:
    return 'json' if getattr(args, 'json', False) else config.get('output.format', 'text')


def settings_from(config) -> EnumerationSettings:
    return EnumerationSettings.from_config(config)


def code_manager(config) -> CodeManager:
    return CodeManager(config.get_fixtures_directory())


def run_config(args: argparse.Namespace, config, **extra: Any) -> Dict[str, Any]:
    """
    The resolved configuration of this run, echoed into every report

    Flags have already been folded into config by the entry point, so this
    reads config for everything that is not a per-subcommand flag.
    """
    resolved: Dict[str, Any] = {
        'subcommand': args.command,
        'enumeration_cap': config.get_enumeration_cap(),
        'chunk_size': int(config.get('enumeration.chunk_size', 65536)),
        'format': output_format(args, config),
    }
    resolved.update(extra)
    return resolved


def parse_exclusions(text: Optional[str], n: int, s: int) -> Union[str, List[Composition], None]:
    """
    'auto', or compositions separated by ';' ('6,3;3,6'), or None

    Raises:
        ValueError: On a malformed composition or one that does not fit (n, s)
    """
    if text is None:
        return None
    text = text.strip()
    if text == 'auto':
        return 'auto'
    compositions = []
    for part in text.split(';'):
        if not part.strip():
            continue
        alpha = parse_composition(part, n)
        if alpha.classes != s:
            raise ValueError(f"Composition {alpha} has {alpha.classes} entries, the scheme has {s} classes")
        compositions.append(alpha)
    return compositions


def parse_target(text: Optional[str]) -> Optional[int]:
    """'max' (or nothing) asks for the largest t."""
    if text is None or text == 'max':
        return None
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"--t takes an integer or 'max', got {text!r}")


def parse_base(text: Optional[str], n: int) -> Optional[tuple]:
    """'0,1,0,...' or, for single-digit symbols, '010...'."""
    if text is None:
        return None
    cleaned = text.strip().strip('()[]')
    parts = cleaned.split(',') if ',' in cleaned else list(cleaned)
    try:
        base = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"Cannot read base vertex {text!r}")
    if len(base) != n:
        raise ValueError(f"Base vertex has length {len(base)}, code length is {n}")
    return base


def emit(kind: str, payload: Dict[str, Any], args: argparse.Namespace, config,
         renderer: Optional[ReportRenderer] = None) -> None:
    """Render the report and write it to --output or stdout."""
    renderer = renderer or ReportRenderer()
    text = renderer.render(kind, payload, output_format(args, config))
    target = getattr(args, 'output', None)
    if target:
        directory, name = target.rsplit('/', 1) if '/' in target else ('', target)
        path = f"{directory}/{sanitize_filename(name)}" if directory else sanitize_filename(name)
        if not write_text(path, text):
            raise ValueError(f"Could not write the report to {path}")
        logger.info(f"Wrote {kind} report to {path}")
    else:
        sys.stdout.write(text)


def fail(message: str, exc: Optional[BaseException] = None) -> int:
    """Log an input error once at the command boundary and return its exit code."""
    if exc is not None:
        logger.error(message, exc_info=logger.isEnabledFor(logging.DEBUG))
    else:
        logger.error(message)
    return EXIT_INPUT_ERROR
