"""labels: write pixel-wise labels and region weight maps for every frame of a corpus
"""

import logging
from tqdm import tqdm
from commands.command_wrapper import CommandResult, command
from commands.corpus_access import open_corpus
from commands.weights_config import load_weights
from config import load_presets
from dataset.resize import resize_sample
from geometry.rasterize import region_weight_map
from storage.artifact_store import ArtifactStore
from storage.handlers.grids import read_grid

logger = logging.getLogger(__name__)


def register(subparsers):
    """Add the labels sub-command"""
    parser = subparsers.add_parser("labels", help="Build labels and weight maps for a corpus")
    parser.add_argument("--corpus", required=True, help="Corpus directory")
    parser.add_argument("--config", help="Region weights key=value file")
    parser.add_argument("--pal", choices=["on", "off"], default="on", help="Partial attack labels for AM2")
    parser.add_argument("--preview", action="store_true", help="Also write a preview PNG per frame")
    parser.add_argument("--out", required=True, help="Labels directory to create")
    parser.set_defaults(handler=cmd_labels)


@command("labels")
def cmd_labels(args) -> CommandResult:
    """Label and weight every frame at the network input size"""
    corpus, manifest = open_corpus(args.corpus)
    weights, _ = load_weights(args.config)
    presets = load_presets()
    output = ArtifactStore(args.out)

    n_frames = 0
    for row in tqdm(manifest, desc="Labelling", unit="video", disable=args.no_progress):
        for sample in corpus.frames.load_video(row):
            resized, label = resize_sample(sample, presets["imageSize"], presets["gridSize"], pal=args.pal == "on")
            weight_map = region_weight_map(resized.landmarks, weights, grid_size=presets["gridSize"])
            output.labels.save(row, sample.frame_index, label, weight_map, preview=args.preview)
            n_frames += 1

    first = manifest[0]
    if read_grid(output.labels.label_path(first, 0)).shape != (presets["gridSize"], presets["gridSize"]):
        raise RuntimeError("Label grids did not read back at the grid size")
    logger.info("Labelled %d frames", n_frames)
    return CommandResult(
        inputs=[args.corpus] + ([args.config] if args.config else []),
        config_paths=[args.config] if args.config else [],
    )
