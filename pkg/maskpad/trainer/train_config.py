"""Optimisation hyper-parameters
"""

from dataclasses import dataclass, replace
from config import load_presets

OPTIMIZERS = ("adam", "sgd")


@dataclass(frozen=True)
class TrainConfig:
    """Optimizer, schedule, early stopping and batching

    gamma is the per-epoch learning-rate decay of the SGD path; Adam runs at a constant rate.
    momentum applies to SGD only and is off unless a config sets it.
    """

    optimizer: str = "adam"
    lr: float = 1e-4
    weight_decay: float = 1e-5
    gamma: float = 1.0
    momentum: float = 0.0
    max_epochs: int = 100
    patience: int = 15
    batch_size: int = 32
    seed: int = 0
    pal: bool = True
    num_workers: int = 0

    def __post_init__(self):
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(f"Unknown optimizer '{self.optimizer}', expected one of {OPTIMIZERS}")
        if not self.lr > 0:
            raise ValueError("Learning rate must be positive")
        if self.weight_decay < 0:
            raise ValueError("Weight decay must not be negative")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must be in (0, 1]")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError("momentum must be in [0, 1)")
        if self.max_epochs <= 0 or self.batch_size <= 0:
            raise ValueError("max_epochs and batch_size must be positive")
        if self.patience < 0 or self.patience >= self.max_epochs:
            raise ValueError(f"patience must be in [0, max_epochs), got {self.patience}")
        if self.num_workers < 0:
            raise ValueError("num_workers must not be negative")

    @classmethod
    def for_variant(cls, variant: str, **overrides):
        """The optimizer defaults of a backbone (Adam for dense_pix, SGD with decay for mix_pix)"""
        presets = load_presets()["optimizers"]
        if variant not in presets:
            raise ValueError(f"No optimizer defaults for variant '{variant}'")
        defaults = dict(presets[variant])
        values = {
            "optimizer": defaults["optimizer"],
            "lr": defaults["lr"],
            "weight_decay": defaults["weight_decay"],
            "gamma": defaults.get("gamma", 1.0),
        }
        values.update(overrides)
        return cls(**values)

    def with_overrides(self, **overrides):
        """A copy with some fields replaced"""
        return replace(self, **overrides)
