"""Building blocks shared by the backbones
"""

import torch
import torch.nn as nn


def channel_shuffle(x, groups):
    """Interleave the channels of `groups` equal groups"""
    batch_size, channels, height, width = x.size()
    channels_per_group = channels // groups
    x = x.view(batch_size, groups, channels_per_group, height, width)
    x = torch.transpose(x, 1, 2).contiguous()
    return x.view(batch_size, -1, height, width)


def round_up(value: int, multiple: int) -> int:
    """Smallest multiple of `multiple` not below `value`"""
    return ((value + multiple - 1) // multiple) * multiple


class ConvBlock(nn.Module):
    """Conv -> BatchNorm -> optional ReLU"""

    def __init__(self, in_c, out_c, kernel=1, stride=1, padding=0, groups=1, activation=True):
        super().__init__()
        self.conv = nn.Conv2d(in_c, out_c, kernel, stride, padding, groups=groups, bias=False)
        self.bn = nn.BatchNorm2d(out_c)
        self.activation = nn.ReLU(inplace=False) if activation else nn.Identity()

    def forward(self, x):
        return self.activation(self.bn(self.conv(x)))


class DenseLayer(nn.Module):
    """BN -> ReLU -> 3x3 conv emitting `growth_rate` channels, concatenated to its input"""

    def __init__(self, in_c, growth_rate):
        super().__init__()
        self.bn = nn.BatchNorm2d(in_c)
        self.relu = nn.ReLU(inplace=False)
        self.conv = nn.Conv2d(in_c, growth_rate, 3, 1, 1, bias=False)

    def forward(self, x):
        return torch.cat([x, self.conv(self.relu(self.bn(x)))], dim=1)


class DenseBlock(nn.Sequential):
    """Layers with concatenative growth"""

    def __init__(self, in_c, n_layers, growth_rate):
        super().__init__(*[DenseLayer(in_c + index * growth_rate, growth_rate) for index in range(n_layers)])
        self.out_channels = in_c + n_layers * growth_rate


class Transition(nn.Sequential):
    """BN -> ReLU -> 1x1 compression -> 2x2 average pool"""

    def __init__(self, in_c, out_c):
        super().__init__(
            nn.BatchNorm2d(in_c),
            nn.ReLU(inplace=False),
            nn.Conv2d(in_c, out_c, 1, bias=False),
            nn.AvgPool2d(2, 2),
        )


class MixConv2d(nn.Module):
    """Depthwise convolution with one kernel size per equal channel group"""

    def __init__(self, channels, kernel_sizes=(3, 5, 7), stride=1):
        super().__init__()
        self.groups = len(kernel_sizes)
        if channels % self.groups != 0:
            raise ValueError(f"{channels} channels cannot be split into {self.groups} kernel groups")
        self.split = channels // self.groups
        self.convs = nn.ModuleList(
            [
                nn.Conv2d(self.split, self.split, k, stride, padding=k // 2, groups=self.split, bias=False)
                for k in kernel_sizes
            ]
        )

    def forward(self, x):
        chunks = torch.split(x, self.split, dim=1)
        return torch.cat([conv(chunk) for conv, chunk in zip(self.convs, chunks)], dim=1)


class MixBlock(nn.Module):
    """Inverted bottleneck with mixed depthwise kernels and a channel shuffle

    The expansion conv is skipped when expand_ratio is 1 and the input already splits evenly
    over the kernels.
    """

    def __init__(self, in_c, out_c, stride=1, kernel_sizes=(3, 5, 7), expand_ratio=2):
        super().__init__()
        groups = len(kernel_sizes)
        self.groups = groups
        if expand_ratio == 1 and in_c % groups == 0:
            hidden = in_c
            self.expand = nn.Identity()
        else:
            hidden = round_up(in_c * expand_ratio, groups)
            self.expand = ConvBlock(in_c, hidden, 1)
        self.mixconv = MixConv2d(hidden, kernel_sizes, stride)
        self.bn = nn.BatchNorm2d(hidden)
        self.relu = nn.ReLU(inplace=False)
        self.project = ConvBlock(hidden, out_c, 1, activation=False)
        self.residual = stride == 1 and in_c == out_c

    def forward(self, x):
        out = self.expand(x)
        out = self.relu(self.bn(self.mixconv(out)))
        out = channel_shuffle(out, self.groups)
        out = self.project(out)
        if self.residual:
            out = out + x
        return out
