"""eval: error rates of test scores at a dev-anchored BPCER threshold
"""

import logging
from commands.command_wrapper import CommandResult, InvalidInputError, command, require_path
from evaluation.report import build_report
from storage.handlers.reports import read_report, write_report, write_roc
from storage.handlers.scores import read_scores

logger = logging.getLogger(__name__)


def register(subparsers):
    """Add the eval sub-command"""
    parser = subparsers.add_parser("eval", help="Evaluate test scores against dev scores")
    parser.add_argument("--scores", required=True, help="Test scores.csv")
    parser.add_argument("--dev-scores", required=True, help="Dev scores.csv that anchors the threshold")
    parser.add_argument(
        "--threshold", choices=["all", "unmask"], default="all", help="Bona fide dev videos behind tau"
    )
    parser.add_argument("--out", required=True, help="Report directory to create")
    parser.set_defaults(handler=cmd_eval)


def _scores_file(path, description: str):
    path = require_path(path, description)
    return path / "scores.csv" if path.is_dir() else path


@command("eval")
def cmd_eval(args) -> CommandResult:
    """Write report.csv and roc.csv"""
    test_path = _scores_file(args.scores, "Scores file")
    dev_path = _scores_file(args.dev_scores, "Dev scores file")
    try:
        report = build_report(read_scores(test_path), read_scores(dev_path), threshold=args.threshold)
    except ValueError as error:
        raise InvalidInputError(str(error)) from error

    write_report(f"{args.out}/report.csv", report)
    write_roc(f"{args.out}/roc.csv", report.roc)
    if "error_rate" not in read_report(f"{args.out}/report.csv"):
        raise RuntimeError("Report did not read back")
    return CommandResult(inputs=[test_path, dev_path])
