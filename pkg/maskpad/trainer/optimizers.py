"""Optimizer and learning-rate schedule factory
"""

import torch
from trainer.train_config import TrainConfig


def build_optimizer(model, config: TrainConfig) -> tuple:
    """Adam, or SGD with a per-epoch exponential decay

    The schedule uses the closed form lr0 * gamma ** epoch, so lr(epoch) is exact.

    Returns:
        tuple: (optimizer, scheduler), step the scheduler once per epoch
    """
    if config.optimizer == "adam":
        optimizer = torch.optim.Adam(model.parameters(), lr=config.lr, weight_decay=config.weight_decay)
    else:
        optimizer = torch.optim.SGD(
            model.parameters(), lr=config.lr, momentum=config.momentum, weight_decay=config.weight_decay
        )
    gamma = config.gamma if config.optimizer == "sgd" else 1.0
    scheduler = torch.optim.lr_scheduler.LambdaLR(optimizer, lambda epoch: gamma**epoch)
    return optimizer, scheduler


def learning_rate(optimizer) -> float:
    """Current learning rate of the first parameter group"""
    return float(optimizer.param_groups[0]["lr"])
