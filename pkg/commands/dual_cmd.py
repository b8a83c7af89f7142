"""
Dual Command for amscheme
dual: generator matrix, size and composition distribution of the dual code
"""
import argparse
import logging

from block_code import dual_code, weight_distribution
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
from report_renderer import dual_payload

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('dual', help='dual code of an additive code')
    parser.add_argument('code', help='code descriptor path or fixture name')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config) -> int:
    try:
        code = code_manager(config).load_code(args.code)
        dual = dual_code(code)
        data = weight_distribution(dual, settings=settings_from(config))
    except INPUT_ERRORS as e:
        return fail(f"Cannot build the dual of {args.code}: {e}", e)

    payload = dual_payload(code, dual, data)
    payload['run_config'] = run_config(args, config, input=args.code)
    emit('dual', payload, args, config)
    return EXIT_OK
