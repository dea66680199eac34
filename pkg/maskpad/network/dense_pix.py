"""Densely connected backbone with a pixel-wise map head and a binary head on the map
"""

import math
import torch.nn as nn
from network.base import PixelSupervisedNet
from network.layers import ConvBlock, DenseBlock, Transition
from network.model_config import ModelConfig


class DensePixNet(PixelSupervisedNet):
    """stem (stride 2) -> max pool -> 3 dense blocks with 2 pooling transitions -> 1x1 map head

    The binary head is an affine layer on the flattened sigmoid map.
    """

    HEADS = ("map_head",)

    def __init__(self, config: ModelConfig):
        super().__init__(config)
        self.stem = ConvBlock(3, config.stem_channels, 3, 2, 1)
        self.pool = nn.MaxPool2d(2, 2)

        blocks = []
        channels = config.stem_channels
        for index, n_layers in enumerate(config.block_layers):
            block = DenseBlock(channels, n_layers, config.growth_rate)
            blocks.append(block)
            channels = block.out_channels
            if index < len(config.block_layers) - 1:
                compressed = max(1, int(math.floor(channels * config.compression)))
                blocks.append(Transition(channels, compressed))
                channels = compressed
        self.blocks = nn.Sequential(*blocks)

        self.head_bn = nn.BatchNorm2d(channels)
        self.head_relu = nn.ReLU(inplace=False)
        self.map_head = nn.Conv2d(channels, 1, 1, bias=True)
        self.binary_head = nn.Linear(config.map_size**2, 1)
        self.init_weights()

    def features(self, x):
        x = self.pool(self.stem(x))
        x = self.blocks(x)
        map_logits = self.map_head(self.head_relu(self.head_bn(x))).squeeze(1)
        binary_logits = self.binary_head(map_logits.sigmoid().flatten(1)).squeeze(1)
        return map_logits, binary_logits

    def receptive_field(self) -> tuple:
        """(size, jump, start) of the map cells in input pixels

        Cell (i, j) depends only on the input square of side `size` centred on
        (start + j * jump, start + i * jump), in continuous pixel coordinates.
        """
        layers = [(3, 2, 1), (2, 2, 0)]
        for index, n_layers in enumerate(self.config.block_layers):
            layers += [(3, 1, 1)] * n_layers
            if index < len(self.config.block_layers) - 1:
                layers += [(1, 1, 0), (2, 2, 0)]
        layers.append((1, 1, 0))

        size, jump, start = 1, 1, 0.5
        for kernel, stride, padding in layers:
            size += (kernel - 1) * jump
            start += ((kernel - 1) / 2 - padding) * jump
            jump *= stride
        return size, jump, start
