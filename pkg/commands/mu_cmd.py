"""
Mu Command for amscheme
mu: minimal interpolation degree of a point set, with an optional grid-embedding upper bound
"""
import argparse
import logging
from typing import Any, Dict

from code_manager import load_embedding, load_points
from commands.common import EXIT_INPUT_ERROR, EXIT_OK, INPUT_ERRORS, add_output_arguments, emit, fail, run_config
from interpolation import EmbeddingError, GridEmbedding, PointSet, grid_upper_bound, least_space, mu_rank

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('mu', help='mu(S) of a finite point set')
    parser.add_argument('points', help='JSON file {"points": [[...], ...]}, optionally with an "embedding"')
    parser.add_argument('--embedding', help='grid embedding file {"sigma", "nodes", "m"}')
    parser.add_argument('--materialize', action='store_true',
                        help='build the grid basis f_alpha and check it on every node')
    parser.add_argument('--no-least-space', action='store_true', help='skip the least space basis')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def _embedding_payload(points: PointSet, embedding: GridEmbedding, materialize: bool) -> Dict[str, Any]:
    payload: Dict[str, Any] = dict(embedding.to_dict())
    payload.update({'certified': False, 'assignment': [], 'basis': [], 'basis_verified': False, 'error': None})
    try:
        certificate = grid_upper_bound(points, embedding, materialize)
    except EmbeddingError as e:
        payload['error'] = str(e)
        return payload
    payload.update(certificate.to_dict())
    payload['certified'] = True
    if certificate.basis is not None:
        payload['basis'] = [{'alpha': list(alpha), 'polynomial': str(f.as_expr())}
                            for alpha, f in sorted(certificate.basis.items())]
    return payload


def run(args: argparse.Namespace, config) -> int:
    try:
        points, embedding = load_points(args.points)
        if args.embedding:
            embedding = load_embedding(args.embedding)
        rank_mu = mu_rank(points)
        space = None if args.no_least_space else least_space(points)
    except INPUT_ERRORS as e:
        return fail(f"Cannot compute mu for {args.points}: {e}", e)

    payload: Dict[str, Any] = {
        'dimension': points.dimension,
        'size': len(points),
        'points': points.to_list(),
        'mu_rank': rank_mu,
        'least_space': None,
        'embedding': None,
    }
    if space is not None:
        if space.mu != rank_mu:
            return fail(f"Least space gives mu = {space.mu} but the rank test gives {rank_mu}")
        payload['least_space'] = {
            'mu': space.mu,
            'dimension': space.dimension,
            'degree_profile': [[degree, count] for degree, count in space.degree_profile().items()],
            'basis': space.render(),
        }
    exit_code = EXIT_OK
    if embedding is not None:
        payload['embedding'] = _embedding_payload(points, embedding, args.materialize)
        if not payload['embedding']['certified']:
            exit_code = EXIT_INPUT_ERROR
        elif rank_mu > embedding.m:
            return fail(f"Grid embedding certifies mu <= {embedding.m} but the rank test gives {rank_mu}")
    payload['run_config'] = run_config(args, config, input=args.points, embedding=args.embedding,
                                       materialize=args.materialize)
    emit('mu', payload, args, config)
    if exit_code != EXIT_OK:
        logger.error(f"Embedding refused: {payload['embedding']['error']}")
    return exit_code
