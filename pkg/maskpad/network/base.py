"""Shared forward contract of the pixel-supervised backbones
"""

from dataclasses import dataclass
import numpy as np
import torch
import torch.nn as nn
from network.model_config import ModelConfig

INPUT_MEAN = 0.5
INPUT_SCALE = 0.5


@dataclass
class ModelOutput:
    """Per-patch bona fide probabilities (N x g x g) and the binary probability (N)"""

    map: torch.Tensor
    binary: torch.Tensor

    def frame(self, index: int = 0) -> tuple:
        """(g x g map, binary scalar) of one item as numpy float64"""
        return (
            self.map[index].detach().cpu().numpy().astype(np.float64),
            float(self.binary[index].detach().cpu()),
        )


class PixelSupervisedNet(nn.Module):
    """A backbone that emits a g x g sigmoid map and a sigmoid binary score

    Subclasses implement `features(x)` returning (map_logits N x g x g, binary_logits N) and list
    their output layers in `HEADS`.
    """

    HEADS = ()

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config

    def check_input(self, x: torch.Tensor):
        """Raise ValueError unless x is N x 3 x S x S at the configured input size"""
        size = self.config.input_size
        if x.dim() != 4 or tuple(x.shape[1:]) != (3, size, size):
            raise ValueError(f"Expected input of shape (N, 3, {size}, {size}), got {tuple(x.shape)}")

    def features(self, x: torch.Tensor) -> tuple:
        raise NotImplementedError

    def forward(self, x: torch.Tensor) -> ModelOutput:
        self.check_input(x)
        x = (x - INPUT_MEAN) / INPUT_SCALE
        map_logits, binary_logits = self.features(x)
        return ModelOutput(map=torch.sigmoid(map_logits), binary=torch.sigmoid(binary_logits))

    def init_weights(self):
        """He initialisation of convolutions, small normal heads, BN at identity, seeded by the config"""
        with torch.random.fork_rng(devices=[]):
            torch.manual_seed(self.config.seed)
            for module in self.modules():
                if isinstance(module, nn.Conv2d):
                    nn.init.kaiming_normal_(module.weight, mode="fan_out", nonlinearity="relu")
                    if module.bias is not None:
                        nn.init.zeros_(module.bias)
                elif isinstance(module, (nn.BatchNorm2d, nn.BatchNorm1d)):
                    nn.init.ones_(module.weight)
                    nn.init.zeros_(module.bias)
                elif isinstance(module, nn.Linear):
                    nn.init.normal_(module.weight, 0.0, 0.01)
                    nn.init.zeros_(module.bias)
            # output convolutions take the small normal of the linear heads
            for name in self.HEADS:
                head = getattr(self, name)
                nn.init.normal_(head.weight, 0.0, 0.01)
                nn.init.zeros_(head.bias)

    def parameter_count(self) -> int:
        """Number of trainable scalars"""
        return sum(parameter.numel() for parameter in self.parameters())
