"""
Commands package for amscheme
One module per subcommand, each with register(subparsers) and run(args, config) -> int
"""
from commands import analyze_cmd, dual_cmd, enumerate_cmd, mu_cmd, scheme_cmd, verify_cmd

COMMANDS = (scheme_cmd, analyze_cmd, mu_cmd, verify_cmd, dual_cmd, enumerate_cmd)

__all__ = ['COMMANDS']
