"""train: fit a backbone on the train split of a corpus and save the best dev-loss checkpoint
"""

import logging
from dataclasses import asdict
from commands.command_wrapper import CommandResult, InvalidInputError, command, load_config
from commands.corpus_access import open_corpus
from dataset.frame_dataset import FrameDataset
from dataset.splits import split_protocol
from network.checkpoint import load_checkpoint, save_checkpoint
from network.model import build_model
from network.model_config import ModelConfig
from storage.handlers.key_values import write_key_values
from storage.handlers.train_log import read_train_log, write_train_log
from trainer.train import train
from trainer.train_config import TrainConfig
from verification.config_checking import MODEL_CONFIG_FORMAT, TRAIN_CONFIG_FORMAT, parse_config

logger = logging.getLogger(__name__)

TRAIN_FILE_FORMAT = {**TRAIN_CONFIG_FORMAT, **MODEL_CONFIG_FORMAT}


def register(subparsers):
    """Add the train sub-command"""
    parser = subparsers.add_parser("train", help="Train a backbone on a corpus")
    parser.add_argument("--corpus", required=True, help="Corpus directory")
    parser.add_argument("--config", help="TrainConfig and ModelConfig key=value file")
    parser.add_argument("--backbone", choices=["dense_pix", "mix_pix"], help="Overrides the config variant")
    parser.add_argument("--pal", choices=["on", "off"], help="Partial attack labels, overrides the config")
    parser.add_argument("--seed", type=int, help="Seeds the split, the initialisation and the data order")
    parser.add_argument("--max-epochs", type=int, help="Caps the number of epochs")
    parser.add_argument("--out", required=True, help="Checkpoint directory to create")
    parser.set_defaults(handler=cmd_train)


def build_configs(raw: dict, backbone: str = None, seed: int = None, pal: str = None, max_epochs: int = None) -> tuple:
    """(ModelConfig, TrainConfig) from a checked config file and command-line overrides

    The optimizer defaults follow the backbone. When --max-epochs is at or below the patience,
    the patience is lowered to max_epochs - 1.

    Raises:
        InvalidInputError: Raised when the values break a config invariant
    """
    backbone = backbone or raw.get("variant", "dense_pix")
    try:
        model_config = parse_config(ModelConfig, raw, variant=backbone, seed=seed)
        train_config = parse_config(
            TrainConfig,
            raw,
            base=TrainConfig.for_variant(backbone),
            seed=seed,
            pal=None if pal is None else pal == "on",
        )
        if max_epochs is not None:
            train_config = train_config.with_overrides(
                max_epochs=max_epochs, patience=min(train_config.patience, max(max_epochs - 1, 0))
            )
    except ValueError as error:
        raise InvalidInputError(str(error)) from error
    return model_config, train_config


def run_training(store, manifest: list, model_config: ModelConfig, train_config: TrainConfig, progress: bool = True):
    """Split the corpus by the train seed, build the datasets and train

    Returns:
        tuple: (trained model at its best epoch, TrainLog, ProtocolSplit)
    """
    split = split_protocol(manifest, train_config.seed)
    dataset_options = {
        "load_frame": store.frames.load,
        "pal": train_config.pal,
        "seed": train_config.seed,
        "image_size": model_config.input_size,
        "grid_size": model_config.map_size,
    }
    train_set = FrameDataset(split.rows(manifest, "train"), train=True, **dataset_options)
    dev_set = FrameDataset(split.rows(manifest, "dev"), train=False, **dataset_options)
    model = build_model(model_config)
    log = train(model, train_set, dev_set, train_config, progress=progress)
    return model, log, split


@command("train")
def cmd_train(args) -> CommandResult:
    """Train and write the checkpoint, its training log and the train config used"""
    raw = load_config(args.config, TRAIN_FILE_FORMAT)
    model_config, train_config = build_configs(raw, args.backbone, args.seed, args.pal, args.max_epochs)
    corpus, manifest = open_corpus(args.corpus)

    model, log, split = run_training(corpus, manifest, model_config, train_config, progress=not args.no_progress)
    save_checkpoint(
        model,
        args.out,
        metadata={
            "best_epoch": log.best_epoch,
            "epochs_run": len(log.epochs),
            "split_seed": train_config.seed,
            "train_identities": split.identities["train"],
            "train_config": asdict(train_config),
        },
    )
    write_train_log(f"{args.out}/train_log.csv", log)
    write_key_values(f"{args.out}/train_config.cfg", asdict(train_config))

    load_checkpoint(args.out)
    if len(read_train_log(f"{args.out}/train_log.csv")) != len(log.epochs):
        raise RuntimeError("Training log did not read back with every epoch")
    return CommandResult(
        inputs=[args.corpus] + ([args.config] if args.config else []),
        config_paths=[args.config] if args.config else [],
        seeds=[train_config.seed],
    )
