"""
Scheme Command for amscheme
scheme show: parse a scheme descriptor, validate the axioms and print P, Q, p and q
"""
import argparse
import logging

from code_manager import load_scheme
from commands.common import EXIT_OK, INPUT_ERRORS, add_output_arguments, emit, fail, run_config
from report_renderer import scheme_payload
from scheme_core import SchemeAxiomError, dual_scheme

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('scheme', help='inspect an association scheme')
    actions = parser.add_subparsers(dest='action', required=True)
    show = actions.add_parser('show', help='validate a scheme descriptor and print its parameters')
    show.add_argument('path', help='scheme descriptor, or a code descriptor whose scheme is shown')
    show.add_argument('--dual', action='store_true', help='show the dual scheme of a translation scheme')
    add_output_arguments(show)
    show.set_defaults(handler=run)


def run(args: argparse.Namespace, config) -> int:
    try:
        scheme = load_scheme(args.path)
        if args.dual:
            scheme = dual_scheme(scheme)
    except SchemeAxiomError as e:
        return fail(f"Scheme axiom {e.axiom} fails: {e}", e)
    except INPUT_ERRORS as e:
        return fail(f"Cannot build scheme from {args.path}: {e}", e)

    payload = scheme_payload(scheme, config.get_decimal_places())
    payload['run_config'] = run_config(args, config, input=args.path, dual=args.dual)
    emit('scheme', payload, args, config)
    return EXIT_OK
