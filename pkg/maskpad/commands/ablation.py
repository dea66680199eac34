"""ablation: baseline, +RW, +PAL and +PAL+RW for each backbone, averaged over seeds
"""

import logging
import math
import re
from commands.command_wrapper import CommandResult, InvalidInputError, command, load_config
from commands.corpus_access import frame_samples, open_corpus
from commands.train import TRAIN_FILE_FORMAT, build_configs, run_training
from commands.weights_config import load_weights
from evaluation.report import build_report
from inference.scoring import score_corpus
from storage.handlers.reports import read_table, write_roc, write_table
from verification import regex_patterns as patterns

logger = logging.getLogger(__name__)

BACKBONES = ("dense_pix", "mix_pix")
VARIANTS = [("baseline", False, False), ("+RW", False, True), ("+PAL", True, False), ("+PAL+RW", True, True)]
VARIANT_SLUGS = {"baseline": "baseline", "+RW": "rw", "+PAL": "pal", "+PAL+RW": "pal_rw"}
ABLATION_FIELDS = [
    "backbone",
    "variant",
    "pal",
    "rw",
    "n_seeds",
    "acer_all",
    "acer_unmask",
    "apcer_print_am2",
    "apcer_replay_am2",
    "auc",
]


def register(subparsers):
    """Add the ablation sub-command"""
    parser = subparsers.add_parser("ablation", help="Run the PAL/RW ablation on a corpus")
    parser.add_argument("--corpus", required=True, help="Corpus directory")
    parser.add_argument("--config", help="TrainConfig and ModelConfig key=value file")
    parser.add_argument("--weights", help="Region weights key=value file")
    parser.add_argument("--backbone", choices=list(BACKBONES) + ["both"], default="both")
    parser.add_argument("--seeds", default="0,1,2", help="Comma-separated seeds, e.g. 0,1,2")
    parser.add_argument("--max-epochs", type=int, help="Caps the number of epochs of every training")
    parser.add_argument("--out", required=True, help="Ablation directory to create")
    parser.set_defaults(handler=cmd_ablation)


def parse_seeds(text: str) -> list:
    """Seeds from '0,1,2'

    Raises:
        InvalidInputError: Raised when the list is malformed or repeats a seed
    """
    if not re.match(patterns.SEED_LIST, text):
        raise InvalidInputError(f"Value '{text}' for 'seeds' does not match the expected pattern '{patterns.SEED_LIST}'")
    seeds = [int(seed) for seed in text.split(",")]
    if len(set(seeds)) != len(seeds):
        raise InvalidInputError(f"Seeds {seeds} repeat a value")
    return seeds


def roc_file_name(backbone: str, variant: str, seed: int) -> str:
    """File of the test ROC curve of one backbone, variant and seed"""
    return f"roc_{backbone}_{VARIANT_SLUGS[variant]}_seed{seed}.csv"


def _mean(values: list):
    present = [value for value in values if value is not None]
    return math.fsum(present) / len(present) if present else None


def run_seed(corpus, manifest, raw: dict, backbone: str, seed: int, weights, normalize, max_epochs, progress) -> dict:
    """Train PAL off and on for one seed and score each with RW off and on

    Returns:
        dict: variant name -> dict of metrics and the test ROC curve
    """
    results = {}
    for pal in (False, True):
        model_config, train_config = build_configs(
            raw, backbone=backbone, seed=seed, pal="on" if pal else "off", max_epochs=max_epochs
        )
        model, _, split = run_training(corpus, manifest, model_config, train_config, progress=progress)
        dev_rows = split.rows(manifest, "dev")
        test_rows = split.rows(manifest, "test")
        for name, variant_pal, rw in VARIANTS:
            if variant_pal != pal:
                continue
            options = {"use_rw": rw, "weights": weights, "normalize": normalize, "progress": progress}
            dev_records = score_corpus(model, frame_samples(corpus, dev_rows), **options)
            test_records = score_corpus(model, frame_samples(corpus, test_rows), **options)
            report_all = build_report(test_records, dev_records, threshold="all")
            report_unmask = build_report(test_records, dev_records, threshold="unmask")
            results[name] = {
                "acer_all": report_all.acer,
                "acer_unmask": report_unmask.acer,
                "apcer_print_am2": report_unmask.rates["apcer_print_am2"],
                "apcer_replay_am2": report_unmask.rates["apcer_replay_am2"],
                "auc": report_unmask.auc,
                "roc": report_unmask.roc,
            }
            logger.info(
                "%s %s seed %d: ACER(unmask)=%.4f", backbone, name, seed, report_unmask.acer
            )
    return results


@command("ablation")
def cmd_ablation(args) -> CommandResult:
    """Write ablation.csv with one row per backbone and variant, and the ROC curve of every run"""
    seeds = parse_seeds(args.seeds)
    raw = load_config(args.config, TRAIN_FILE_FORMAT)
    weights, normalize = load_weights(args.weights)
    corpus, manifest = open_corpus(args.corpus)
    backbones = BACKBONES if args.backbone == "both" else (args.backbone,)

    rows = []
    for backbone in backbones:
        per_seed = [
            run_seed(corpus, manifest, raw, backbone, seed, weights, normalize, args.max_epochs, not args.no_progress)
            for seed in seeds
        ]
        for seed, results in zip(seeds, per_seed):
            for name, _, _ in VARIANTS:
                write_roc(f"{args.out}/{roc_file_name(backbone, name, seed)}", results[name]["roc"])
        for name, pal, rw in VARIANTS:
            row = {
                "backbone": backbone,
                "variant": name,
                "pal": "on" if pal else "off",
                "rw": "on" if rw else "off",
                "n_seeds": len(seeds),
            }
            for metric in ABLATION_FIELDS[5:]:
                row[metric] = _mean([results[name][metric] for results in per_seed])
            rows.append(row)

    table_path = f"{args.out}/ablation.csv"
    write_table(table_path, ABLATION_FIELDS, rows)
    if len(read_table(table_path)) != len(rows):
        raise RuntimeError("Ablation table did not read back with every row")
    config_paths = [path for path in (args.config, args.weights) if path]
    return CommandResult(inputs=[args.corpus] + config_paths, config_paths=config_paths, seeds=seeds)
