"""
Verify Command for amscheme
verify-design: exhaustive t-design check of a composition class, a weight class or a block file
"""
import argparse
import logging
from typing import Any, Dict

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
from design_verify import (
    BlockMultiset,
    DesignRefusal,
    is_t_design,
    max_design_t,
    supports_of_classes,
    supports_of_weight,
)
from utils.json_storage import load_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('verify-design', help='check a class of a code for the t-design property')
    parser.add_argument('source', help='code descriptor path or fixture name; with --blocks, a block file')
    selection = parser.add_mutually_exclusive_group(required=True)
    selection.add_argument('--alpha', help="composition class, or several with the same weight: '6,3' or '6,3;3,6'")
    selection.add_argument('--weight', type=int, help='every word of this Hamming weight')
    selection.add_argument('--blocks', action='store_true',
                           help='source is a JSON file {"n": N, "blocks": [[1-indexed points], ...]}')
    parser.add_argument('--t', dest='target', default='max', help="t to check, or 'max' for the largest")
    parser.add_argument('--base', help='base vertex for the supports')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def _load_blocks(args: argparse.Namespace, config):
    if args.blocks:
        data = load_json(args.source)
        if not isinstance(data, dict) or 'n' not in data or 'blocks' not in data:
            raise ValueError(f"{args.source} needs 'n' and 'blocks'")
        return BlockMultiset.from_blocks(int(data['n']), data['blocks']), f"blocks from {args.source}"
    code = code_manager(config).load_code(args.source)
    base = parse_base(args.base, code.n)
    settings = settings_from(config)
    if args.weight is not None:
        return supports_of_weight(code, args.weight, base, settings), f"{code.name}: words of weight {args.weight}"
    classes = parse_exclusions(args.alpha, code.n, code.scheme.classes)
    if not isinstance(classes, list):
        raise ValueError("--alpha takes explicit compositions")
    label = ', '.join(str(alpha) for alpha in classes)
    return supports_of_classes(code, classes, base, settings), f"{code.name}: class {label}"


def run(args: argparse.Namespace, config) -> int:
    workers = config.get_workers()
    max_subsets = config.get_max_subsets()
    try:
        blocks, source = _load_blocks(args, config)
        target = parse_target(args.target)
        largest = None
        if target is None:
            largest = max_design_t(blocks, workers, max_subsets)
            target = largest
        result = is_t_design(blocks, target, workers, max_subsets)
    except INPUT_ERRORS as e:
        return fail(f"Cannot verify {args.source}: {e}", e)

    is_design = not isinstance(result, DesignRefusal)
    payload: Dict[str, Any] = {
        'source': source,
        'n': blocks.n,
        'k': blocks.k,
        'block_count': blocks.count,
        'distinct': blocks.distinct,
        'simple': blocks.is_simple,
        't': target,
        'is_design': is_design,
        'max_t': largest,
        'result': result.to_dict(),
        'lambdas': [str(value) for value in result.lambdas] if is_design else [],
        'witness': None,
    }
    if not is_design:
        (first, a), (second, b) = result.witness
        payload['witness'] = f"{list(first)} lies in {a} blocks, {list(second)} in {b}"
    payload['run_config'] = run_config(args, config, input=args.source, alpha=args.alpha, weight=args.weight,
                                       t=args.target, base=args.base, max_subsets=max_subsets)
    emit('design', payload, args, config)
    return EXIT_OK if is_design else EXIT_TARGET_NOT_MET
