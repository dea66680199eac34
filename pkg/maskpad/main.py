""" Provides the command-line entry point """

import argparse
import logging
import sys
from commands import ablation, evaluate, labels, score, synth, train

COMMANDS = [synth, labels, train, score, evaluate, ablation]
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"


def build_parser() -> argparse.ArgumentParser:
    """The parser with every sub-command registered"""
    parser = argparse.ArgumentParser(
        prog="maskpad", description="Masked-face presentation attack detection toolkit"
    )
    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default="INFO", help="Logging level"
    )
    parser.add_argument("--no-progress", action="store_true", help="Hide progress bars")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def main(argv=None) -> int:
    """Parse the arguments, run the command and return its exit code

    Args:
        argv (list): Arguments without the program name. Defaults to sys.argv[1:]

    Returns:
        int: 0 on success, 1 on a runtime failure, 2 on invalid input, 3 on a missing input
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return 0 if error.code == 0 else 2
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
