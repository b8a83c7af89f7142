"""
Analyze Command for amscheme
analyze: certify t-designs in the composition classes of a code
"""
import argparse
import logging

from certification_job import METHODS, create_certification_job
from commands.common import (
    EXIT_OK,
    EXIT_TARGET_NOT_MET,
    INPUT_ERRORS,
    add_output_arguments,
    code_manager,
    emit,
    fail,
    parse_base,
    parse_exclusions,
    parse_target,
    run_config,
    settings_from,
)
from scheme_core import hamming_fusion

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('analyze', help='certify t-designs in a code')
    parser.add_argument('code', help='code descriptor path or fixture name')
    parser.add_argument('--k-exclude', metavar='SET',
                        help="classes of C known to be designs: '6,3;3,6' or 'auto'")
    parser.add_argument('--l-exclude', metavar='SET',
                        help="classes of the dual known to be weakly balanced: '0,4;4,0' or 'auto'")
    parser.add_argument('--t', dest='target', default='max', help="target t, or 'max' (default)")
    parser.add_argument('--base', help='base vertex, e.g. 000000000000 or 0,1,2,...')
    parser.add_argument('--method', choices=METHODS, default='auto',
                        help='general windows, the 1-class hamming path, or auto (default)')
    parser.add_argument('--hamming-view', action='store_true',
                        help='read the code in the 1-class scheme on its alphabet')
    parser.add_argument('--verify', action='store_true', help='check every claimed design exhaustively')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config) -> int:
    try:
        code = code_manager(config).load_code(args.code)
        if args.hamming_view:
            code = code.with_scheme(hamming_fusion(code.scheme))
        s = code.scheme.classes
        K = parse_exclusions(args.k_exclude, code.n, s)
        L = parse_exclusions(args.l_exclude, code.n, s)
        target = parse_target(args.target)
        base = parse_base(args.base, code.n)
    except INPUT_ERRORS as e:
        return fail(f"Cannot set up the analysis of {args.code}: {e}", e)

    resolved = run_config(
        args, config,
        input=args.code,
        base=args.base,
        K=args.k_exclude,
        L=args.l_exclude,
        t=args.target,
        method=args.method,
        hamming_view=args.hamming_view,
        verify=args.verify,
        max_subsets=config.get_max_subsets(),
    )
    job = create_certification_job(
        code, K=K, L=L, target=target, base=base, method=args.method, verify=args.verify,
        settings=settings_from(config), max_subsets=config.get_max_subsets(), run_config=resolved,
    )
    success, message = job.execute()
    if job.report is None:
        return fail(f"{code.name}: {message}")

    payload = job.report.to_dict()
    payload['status'] = job.status
    payload['message'] = message
    payload['suggestions'] = [suggestion.to_dict() for suggestion in job.suggestions]
    try:
        emit('analysis', payload, args, config)
    except ValueError as e:
        return fail(str(e), e)
    return EXIT_OK if success else EXIT_TARGET_NOT_MET
