"""
Enumerate Command for amscheme
enumerate: weight enumerators of a code and their MacWilliams transform
"""
import argparse
import logging

from commands.common import (
    EXIT_OK,
    INPUT_ERRORS,
    add_output_arguments,
    code_manager,
    emit,
    fail,
    run_config,
    settings_from,
)
from enumerators import STANDARD_KINDS, macwilliams_transform, standard_scheme
from report_renderer import enumerator_payload

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('enumerate', help='weight enumerator of a code')
    parser.add_argument('code', help='code descriptor path or fixture name')
    parser.add_argument('--kind', choices=('native',) + STANDARD_KINDS, default='native',
                        help="native (the code's own scheme), cwe, swe or hwe")
    parser.add_argument('--transform', action='store_true', help='also print |C|^-1 W(xi Q^T)')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config) -> int:
    settings = settings_from(config)
    try:
        code = code_manager(config).load_code(args.code)
        viewed = code if args.kind == 'native' else code.with_scheme(standard_scheme(code, args.kind))
        enumerator = viewed.weight_enumerator(settings)
        transformed = (macwilliams_transform(enumerator, viewed.scheme, code.size)
                       if args.transform else None)
    except INPUT_ERRORS as e:
        return fail(f"Cannot enumerate {args.code}: {e}", e)

    payload = enumerator_payload(code, args.kind, enumerator, transformed, config.get_decimal_places())
    payload['scheme'] = viewed.scheme.name
    payload['run_config'] = run_config(args, config, input=args.code, kind=args.kind, transform=args.transform)
    emit('enumerator', payload, args, config)
    return EXIT_OK
