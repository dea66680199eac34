"""score: score the videos of one split with a trained checkpoint
"""

import logging
from commands.command_wrapper import CommandResult, command, require_path
from commands.corpus_access import frame_samples, open_corpus
from commands.weights_config import load_weights
from dataset.splits import SPLIT_NAMES, split_protocol
from inference.scoring import score_corpus
from network.checkpoint import load_checkpoint, read_checkpoint_manifest
from storage.handlers.scores import read_scores, write_scores

logger = logging.getLogger(__name__)


def register(subparsers):
    """Add the score sub-command"""
    parser = subparsers.add_parser("score", help="Score a corpus split with a checkpoint")
    parser.add_argument("--checkpoint", required=True, help="Checkpoint directory")
    parser.add_argument("--corpus", required=True, help="Corpus directory")
    parser.add_argument("--config", help="Region weights key=value file")
    parser.add_argument("--rw", choices=["on", "off"], default="on", help="Regional weighted scoring")
    parser.add_argument(
        "--split", choices=list(SPLIT_NAMES) + ["all"], default="test", help="Videos to score"
    )
    parser.add_argument("--out", required=True, help="Scores directory to create")
    parser.set_defaults(handler=cmd_score)


def split_rows(manifest: list, split_seed: int, name: str) -> list:
    """Manifest rows of a split, recomputed from the seed the checkpoint was trained with"""
    if name == "all":
        return list(manifest)
    return split_protocol(manifest, split_seed).rows(manifest, name)


@command("score")
def cmd_score(args) -> CommandResult:
    """Write scores.csv for the requested split"""
    checkpoint = require_path(args.checkpoint, "Checkpoint directory")
    metadata = read_checkpoint_manifest(checkpoint)["metadata"]
    corpus, manifest = open_corpus(args.corpus)
    weights, normalize = load_weights(args.config)

    model = load_checkpoint(checkpoint)
    rows = split_rows(manifest, metadata.get("split_seed", 0), args.split)
    records = score_corpus(
        model,
        frame_samples(corpus, rows),
        use_rw=args.rw == "on",
        weights=weights,
        normalize=normalize,
        progress=not args.no_progress,
    )
    scores_path = f"{args.out}/scores.csv"
    write_scores(scores_path, records)

    if len(read_scores(scores_path)) != len(rows):
        raise RuntimeError("Scores did not read back with every video")
    return CommandResult(
        inputs=[args.checkpoint, args.corpus] + ([args.config] if args.config else []),
        config_paths=[args.config] if args.config else [],
        seeds=[metadata.get("split_seed", 0)],
    )
