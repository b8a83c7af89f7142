"""
amscheme - t-design certification for block codes over association schemes
Command-line entry point
"""
import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from commands import COMMANDS
from commands.common import EXIT_INPUT_ERROR
from utils.config_manager import ConfigManager

logger = logging.getLogger('amscheme')

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_FILE = os.path.join('logs', 'amscheme.log')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='amscheme',
        description='Certify t-designs in the composition classes of a block code',
    )
    parser.add_argument('--config', help='configuration file (default: $AMSCHEME_CONFIG or config.json)')
    parser.add_argument('--workers', type=int, help='worker threads for enumeration and subset counting')
    parser.add_argument('--cap', type=int, help='largest code that may be enumerated')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', '-v', action='store_true', help='debug logging')
    verbosity.add_argument('--quiet', '-q', action='store_true', help='warnings and errors only')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(config: ConfigManager, verbose: bool = False, quiet: bool = False) -> None:
    """Stream handler on stderr always, file handler on logs/amscheme.log when logging.file is set."""
    if verbose or config.debug_enabled():
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.get('logging.file', False):
        os.makedirs(os.path.dirname(LOG_FILE), exist_ok=True)
        handlers.append(logging.FileHandler(LOG_FILE))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand

    Returns:
        0 on success, 1 if a certification target is not met, 2 on input errors
    """
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else 0

    config = ConfigManager(args.config)
    if args.workers is not None:
        if args.workers < 1:
            parser.print_usage(sys.stderr)
            return EXIT_INPUT_ERROR
        config.set('enumeration.workers', args.workers)
    if args.cap is not None:
        config.set('enumeration.cap', args.cap)
    configure_logging(config, args.verbose, args.quiet)
    logger.debug(f"Running {args.command} with {config.get_all()}")
    return args.handler(args, config)


if __name__ == '__main__':
    sys.exit(main())
