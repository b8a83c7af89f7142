"""
Report Renderer for amscheme
Builds JSON-ready report payloads and renders them as text through Jinja2 templates
"""
import os
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined, TemplateError

from block_code import BlockCode, WeightData
from enumerators import WeightEnumerator
from scheme_core import AssociationScheme
from utils.cyclotomic import CyclotomicNumber
from utils.json_storage import dumps
from utils.type_converter import format_exact

logger = logging.getLogger(__name__)

REPORT_KINDS = ('scheme', 'analysis', 'mu', 'design', 'enumerator', 'dual')
DEFAULT_TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'report_templates')


def exact_value(value: Any, places: int = 6) -> Dict[str, Any]:
    """{'exact': '3/5', 'decimal': '0.600000'} and, for cyclotomic values, the coefficient vector."""
    if isinstance(value, CyclotomicNumber):
        if value.is_rational():
            fraction = value.to_fraction()
            return {'exact': format_exact(fraction), 'decimal': f"{float(fraction):.{places}f}"}
        return {'exact': str(value), 'decimal': value.decimal(places), 'cyclotomic': value.to_dict()}
    fraction = Fraction(value)
    return {'exact': format_exact(fraction), 'decimal': f"{float(fraction):.{places}f}"}


def _matrix(rows: Sequence[Sequence[Any]], places: int) -> List[List[Dict[str, Any]]]:
    return [[exact_value(v, places) for v in row] for row in rows]


def scheme_payload(scheme: AssociationScheme, places: int = 6) -> Dict[str, Any]:
    """Everything scheme show prints: P, Q, intersection numbers and Krein parameters."""
    r = scheme.classes + 1
    payload: Dict[str, Any] = {
        'name': scheme.name,
        'size': scheme.size,
        'classes': scheme.classes,
        'descriptor': scheme.to_descriptor(),
        'symmetric': scheme.is_symmetric(),
        'transpose_map': list(scheme.transpose_map),
        'valencies': scheme.valencies,
        'multiplicities': scheme.multiplicities,
        'P': _matrix(scheme.P, places),
        'Q': _matrix(scheme.Q, places),
        'intersection_numbers': [
            {'k': k, 'table': [[int(scheme.intersection[i][j][k]) for j in range(r)] for i in range(r)]}
            for k in range(r)
        ],
        'krein_parameters': [
            {'k': k, 'table': [[exact_value(scheme.krein[i][j][k], places)['exact'] for j in range(r)]
                               for i in range(r)]}
            for k in range(r)
        ],
        'axioms': ['AS1', 'AS2', 'AS3', 'AS4', 'PQ', 'KREIN'],
    }
    if scheme.is_translation:
        group = scheme.group
        payload['group'] = group.describe()
        payload['class_members'] = [[str(group.element_at(x)) for x in members]
                                    for members in scheme.class_set.classes]
        payload['dual_class_members'] = [[str(group.element_at(x)) for x in members]
                                         for members in scheme.class_set.dual_classes]
    return payload


def distribution_rows(data: WeightData) -> List[Dict[str, Any]]:
    return [{'alpha': list(alpha.alpha), 'weight': alpha.weight, 'count': count}
            for alpha, count in data.distribution.items() if count]


def enumerator_payload(code: BlockCode, kind: str, enumerator: WeightEnumerator,
                       transformed: Optional[WeightEnumerator] = None, places: int = 6) -> Dict[str, Any]:
    def terms(w: WeightEnumerator) -> List[Dict[str, Any]]:
        return [{'alpha': list(alpha.alpha), 'coefficient': exact_value(value, places)}
                for alpha, value in w.distribution().items()]

    payload: Dict[str, Any] = {
        'code': code.name,
        'n': code.n,
        'size': code.size,
        'kind': kind,
        'variables': enumerator.variables,
        'terms': terms(enumerator),
        'total': format_exact(enumerator.rationalized().total()),
        'polynomial': enumerator.render(),
    }
    if transformed is not None:
        payload['transform'] = {
            'terms': terms(transformed),
            'polynomial': transformed.render(),
        }
    return payload


def dual_payload(code: BlockCode, dual: BlockCode, data: WeightData) -> Dict[str, Any]:
    return {
        'code': code.name,
        'n': code.n,
        'size': code.size,
        'dual': dual.name,
        'dual_scheme': dual.scheme.name,
        'dual_size': dual.size,
        'size_product': code.size * dual.size,
        'space_size': code.scheme.size ** code.n,
        'generators': [list(g) for g in dual.canonical_generators()],
        'pairing_checked': True,
        'distribution': distribution_rows(data),
        'dual_distance': min(alpha.weight for alpha in data.support() if not alpha.is_zero()),
    }


class ReportRenderer:
    """
    Renders report payloads as text or JSON
    """

    def __init__(self, templates_dir: str = DEFAULT_TEMPLATES_DIR):
        """
        Initialize ReportRenderer

        Args:
            templates_dir: Directory containing the .txt.j2 report templates
        """
        self.templates_dir = templates_dir
        self.jinja_env = Environment(
            loader=FileSystemLoader(self.templates_dir),
            autoescape=False,
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.jinja_env.filters['comp'] = lambda alpha: '(' + ','.join(str(a) for a in alpha) + ')'
        self.jinja_env.filters['cells'] = _cells
        logger.debug(f"ReportRenderer initialized with directory: {self.templates_dir}")

    def render_text(self, kind: str, payload: Dict[str, Any]) -> str:
        """
        Render a payload with the template of its kind

        Raises:
            ValueError: If the kind is unknown or the template fails
        """
        if kind not in REPORT_KINDS:
            raise ValueError(f"Unknown report kind {kind!r}")
        try:
            template = self.jinja_env.get_template(f"{kind}.txt.j2")
            return template.render(report=payload)
        except TemplateError as e:
            logger.error(f"Error rendering {kind} report: {e}")
            raise ValueError(f"Error rendering {kind} report: {e}")

    def render(self, kind: str, payload: Dict[str, Any], fmt: str = 'text') -> str:
        if fmt == 'json':
            return dumps(payload) + '\n'
        return self.render_text(kind, payload)


def _cells(row: Sequence[Any], width: int = 0) -> str:
    texts = [str(cell) for cell in row]
    width = width or max((len(t) for t in texts), default=0)
    return '  '.join(t.rjust(width) for t in texts)
