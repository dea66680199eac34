"""synth: write a synthetic corpus directory
"""

import logging
from dataclasses import asdict
from tqdm import tqdm
from commands.command_wrapper import CommandResult, InvalidInputError, command, load_config
from dataset.synthetic import SynthConfig, generate_synthetic_corpus
from storage.artifact_store import ArtifactStore
from storage.handlers.manifest import read_manifest
from verification.config_checking import SYNTH_CONFIG_FORMAT, parse_config

logger = logging.getLogger(__name__)


def register(subparsers):
    """Add the synth sub-command"""
    parser = subparsers.add_parser("synth", help="Generate a synthetic corpus")
    parser.add_argument("--config", help="SynthConfig key=value file")
    parser.add_argument("--seed", type=int, help="Overrides the config seed")
    parser.add_argument("--out", required=True, help="Corpus directory to create")
    parser.set_defaults(handler=cmd_synth)


@command("synth")
def cmd_synth(args) -> CommandResult:
    """Render every frame of the corpus with its landmarks, the manifest and the config used"""
    raw = load_config(args.config, SYNTH_CONFIG_FORMAT)
    try:
        config = parse_config(SynthConfig, raw, seed=args.seed)
        corpus = generate_synthetic_corpus(config)
    except ValueError as error:
        raise InvalidInputError(str(error)) from error

    store = ArtifactStore(args.out)
    store.synth_config.write(asdict(config))
    for row in tqdm(corpus.manifest, desc="Rendering", unit="video", disable=args.no_progress):
        for sample in corpus.render_video(row):
            store.frames.save(row, sample)
    store.manifest.write(corpus.manifest)

    if len(read_manifest(store.manifest.path)) != len(corpus.manifest):
        raise RuntimeError("Manifest did not read back with every video")
    logger.info("Wrote %d videos to %s", len(corpus.manifest), args.out)
    return CommandResult(
        inputs=[args.config] if args.config else [],
        config_paths=[args.config] if args.config else [],
        seeds=[config.seed],
    )
