"""Mixed depthwise kernel backbone whose map and binary outputs are two fully connected layers
"""

import torch.nn as nn
from network.base import PixelSupervisedNet
from network.layers import ConvBlock, MixBlock
from network.model_config import ModelConfig


class MixPixNet(PixelSupervisedNet):
    """stem (stride 2) -> 3 stride-2 stages of MixBlocks -> 1x1 embedding -> global depthwise conv

    The global embedding feeds fc_map (g * g logits reshaped to the map) and fc_binary.
    """

    def __init__(self, config: ModelConfig):
        super().__init__(config)
        self.stem = ConvBlock(3, config.stem_channels, 3, 2, 1)

        blocks = []
        channels = config.stem_channels
        for out_channels, n_blocks in zip(config.stage_channels, config.blocks_per_stage):
            for index in range(n_blocks):
                blocks.append(
                    MixBlock(
                        channels,
                        out_channels,
                        stride=2 if index == 0 else 1,
                        kernel_sizes=config.kernel_sizes,
                        expand_ratio=config.expand_ratio,
                    )
                )
                channels = out_channels
        self.blocks = nn.Sequential(*blocks)

        embedding = config.embedding_channels
        self.embed = ConvBlock(channels, embedding, 1)
        # global depthwise conv over the whole g x g grid
        self.gdc = nn.Conv2d(embedding, embedding, config.map_size, groups=embedding, bias=False)
        self.gdc_bn = nn.BatchNorm1d(embedding)
        self.fc_map = nn.Linear(embedding, config.map_size**2)
        self.fc_binary = nn.Linear(embedding, 1)
        self.init_weights()

    def features(self, x):
        x = self.blocks(self.stem(x))
        x = self.gdc(self.embed(x)).flatten(1)
        x = self.gdc_bn(x)
        size = self.config.map_size
        map_logits = self.fc_map(x).view(-1, size, size)
        binary_logits = self.fc_binary(x).squeeze(1)
        return map_logits, binary_logits
