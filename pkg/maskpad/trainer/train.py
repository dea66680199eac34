"""Training loop: class-weighted loss, per-epoch dev evaluation, early stopping
"""

import contextlib
import copy
import logging
import math
from dataclasses import dataclass, field
import numpy as np
import torch
from torch.utils.data import DataLoader
from tqdm import tqdm
from config import load_presets
from evaluation.metrics import acer, threshold_at_bpcer
from inference.scoring import aggregate_videos
from network.loss import overall_loss, sample_weights
from trainer.class_weights import class_weights
from trainer.early_stopping import EarlyStopping
from trainer.optimizers import build_optimizer, learning_rate
from trainer.train_config import TrainConfig

logger = logging.getLogger(__name__)


class TrainingDivergedError(RuntimeError):
    """Raised when the training loss stops being finite"""


@dataclass(frozen=True)
class EpochRecord:
    """Summary of one epoch"""

    epoch: int
    train_loss: float
    dev_loss: float
    dev_acer: float
    lr: float


@dataclass
class TrainLog:
    """Per-epoch records of a run"""

    epochs: list = field(default_factory=list)
    stopped_early: bool = False

    @property
    def best_epoch(self) -> int:
        """The epoch with the lowest dev loss, the earliest on ties"""
        if not self.epochs:
            raise ValueError("No epoch has completed")
        return min(self.epochs, key=lambda record: (record.dev_loss, record.epoch)).epoch

    def best(self) -> EpochRecord:
        """Record of the best epoch"""
        return self.epochs[self.best_epoch]


@contextlib.contextmanager
def deterministic_run(seed: int):
    """Seed torch and switch to deterministic kernels, restoring the caller's kernel setting on exit"""
    enabled = torch.are_deterministic_algorithms_enabled()
    warn_only = torch.is_deterministic_algorithms_warn_only_enabled()
    torch.manual_seed(seed)
    torch.use_deterministic_algorithms(True, warn_only=True)
    try:
        yield
    finally:
        torch.use_deterministic_algorithms(enabled, warn_only=warn_only)


def _epoch_order(n_items: int, seed: int, epoch: int) -> list:
    return np.random.default_rng([seed, epoch]).permutation(n_items).tolist()


def evaluate(model, dataset, weights: tuple, lambda_: float, batch_size: int = 32, num_workers: int = 0) -> tuple:
    """Dev loss and dev ACER (plain-mean video scores, BPCER10 threshold on all dev bona fide)

    Args:
        model (PixelSupervisedNet): The model, switched to eval mode
        dataset (FrameDataset): The dev frames, not augmented
        weights (tuple): (w_bona_fide, w_attack)
        lambda_ (float): Weight of the pixel-wise loss term
        batch_size (int): Frames per forward pass
        num_workers (int): Loader workers

    Returns:
        tuple: (mean weighted loss per frame, ACER in percent)
    """
    model.eval()
    loader = DataLoader(dataset, batch_size=batch_size, shuffle=False, num_workers=num_workers)
    total_loss, n_items, frame_scores = 0.0, 0, []
    with torch.no_grad():
        for images, label_maps, binary in loader:
            output = model(images)
            loss = overall_loss(output, label_maps, binary, lambda_, sample_weights(binary, weights))
            total_loss += float(loss) * len(binary)
            n_items += len(binary)
            frame_scores.extend(output.map.mean(dim=(1, 2)).double().tolist())

    entries = [
        (row.video_id, row.identity, row.category, row.medium, score)
        for (row, _), score in zip(dataset.items, frame_scores)
    ]
    records = aggregate_videos(entries)
    tau = threshold_at_bpcer(records, load_presets()["bpcerTarget"], "all")
    return total_loss / n_items, acer(records, tau)


def train(model, train_set, dev_set, config: TrainConfig, progress: bool = True) -> TrainLog:
    """Minimise the overall loss on train and keep the weights of the best dev-loss epoch

    Args:
        model (PixelSupervisedNet): Freshly initialised model, trained in place
        train_set (FrameDataset): Training frames with augmentation on
        dev_set (FrameDataset): Dev frames
        config (TrainConfig): Optimisation settings
        progress (bool): Show progress bars

    Raises:
        TrainingDivergedError: Raised when a batch loss is not finite

    Returns:
        TrainLog: Per-epoch records. The model is left at the best epoch's weights
    """
    with deterministic_run(config.seed):
        return _fit(model, train_set, dev_set, config, progress)


def _fit(model, train_set, dev_set, config: TrainConfig, progress: bool) -> TrainLog:
    weights = class_weights(train_set.rows)
    lambda_ = model.config.lambda_
    optimizer, scheduler = build_optimizer(model, config)
    stopper = EarlyStopping(patience=config.patience)
    log = TrainLog()
    best_state = copy.deepcopy(model.state_dict())
    logger.info(
        "Training %s on %d frames (dev %d), class weights %.4f/%.4f, %s lr=%g",
        model.config.variant,
        len(train_set),
        len(dev_set),
        weights[0],
        weights[1],
        config.optimizer,
        config.lr,
    )

    # a single-item last batch cannot be batch-normalised in training mode
    drop_last = len(train_set) % config.batch_size == 1
    for epoch in range(config.max_epochs):
        train_set.set_epoch(epoch)
        loader = DataLoader(
            train_set,
            batch_size=config.batch_size,
            sampler=_epoch_order(len(train_set), config.seed, epoch),
            num_workers=config.num_workers,
            drop_last=drop_last,
        )
        lr = learning_rate(optimizer)
        model.train()
        total_loss, n_items = 0.0, 0
        for batch_index, (images, label_maps, binary) in enumerate(
            tqdm(loader, desc=f"Epoch {epoch}", unit="batch", disable=not progress, leave=False)
        ):
            output = model(images)
            loss = overall_loss(output, label_maps, binary, lambda_, sample_weights(binary, weights))
            if not torch.isfinite(loss):
                raise TrainingDivergedError(
                    f"Loss became {float(loss)} at epoch {epoch}, batch {batch_index}"
                )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total_loss += float(loss) * len(binary)
            n_items += len(binary)
        scheduler.step()

        dev_loss, dev_acer = evaluate(model, dev_set, weights, lambda_, config.batch_size, config.num_workers)
        if not math.isfinite(dev_loss):
            raise TrainingDivergedError(f"Dev loss became {dev_loss} at epoch {epoch}")
        record = EpochRecord(epoch, total_loss / max(n_items, 1), dev_loss, dev_acer, lr)
        log.epochs.append(record)
        logger.info(
            "epoch=%d train_loss=%.6f dev_loss=%.6f dev_acer=%.2f lr=%.6g",
            record.epoch,
            record.train_loss,
            record.dev_loss,
            record.dev_acer,
            record.lr,
        )

        stop = stopper(dev_loss)
        if stopper.improved:
            best_state = copy.deepcopy(model.state_dict())
        if stop:
            log.stopped_early = True
            logger.info("Early stopping after epoch %d, best epoch %d", epoch, log.best_epoch)
            break

    model.load_state_dict(best_state)
    model.eval()
    return log
