"""Architecture hyper-parameters of the two backbones
"""

from dataclasses import dataclass, replace

VARIANTS = ("dense_pix", "mix_pix")
OUTPUT_STRIDE = 16


@dataclass(frozen=True)
class ModelConfig:
    """Backbone choice and desk-scale widths

    dense_pix uses stem_channels, growth_rate, block_layers and compression. mix_pix uses
    stem_channels, stage_channels, blocks_per_stage, kernel_sizes, expand_ratio and
    embedding_channels. Both reduce the input by 16, so 224 pixels give a 14 x 14 map.
    """

    variant: str = "dense_pix"
    stem_channels: int = 16
    growth_rate: int = 12
    block_layers: tuple = (3, 3, 3)
    compression: float = 0.5
    stage_channels: tuple = (32, 64, 96)
    blocks_per_stage: tuple = (2, 2, 2)
    kernel_sizes: tuple = (3, 5, 7)
    expand_ratio: int = 2
    embedding_channels: int = 128
    lambda_: float = 0.5
    input_size: int = 224
    seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"Unknown variant '{self.variant}', expected one of {VARIANTS}")
        for name in ("block_layers", "stage_channels", "blocks_per_stage", "kernel_sizes"):
            object.__setattr__(self, name, tuple(int(value) for value in getattr(self, name)))
        for name in ("stem_channels", "growth_rate", "expand_ratio", "embedding_channels", "input_size"):
            if int(getattr(self, name)) <= 0:
                raise ValueError(f"'{name}' must be a positive integer")
        for name in ("block_layers", "stage_channels", "blocks_per_stage", "kernel_sizes"):
            values = getattr(self, name)
            if len(values) != 3 or any(value <= 0 for value in values):
                raise ValueError(f"'{name}' must hold 3 positive integers")
        if any(kernel % 2 == 0 for kernel in self.kernel_sizes):
            raise ValueError("Kernel sizes must be odd")
        if not 0.0 < self.compression <= 1.0:
            raise ValueError("'compression' must be in (0, 1]")
        if not 0.0 <= self.lambda_ <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.lambda_}")
        if self.input_size % OUTPUT_STRIDE != 0:
            raise ValueError(f"'input_size' must be a multiple of {OUTPUT_STRIDE}")

    @property
    def map_size(self) -> int:
        """Side of the pixel-wise output map"""
        return self.input_size // OUTPUT_STRIDE

    @classmethod
    def tiny(cls, variant: str, input_size: int = 32):
        """A fewer-than-500-parameter instance for gradient checks"""
        if variant == "dense_pix":
            return cls(variant=variant, stem_channels=2, growth_rate=2, block_layers=(1, 1, 1), input_size=input_size)
        return cls(
            variant=variant,
            stem_channels=3,
            stage_channels=(3, 3, 3),
            blocks_per_stage=(1, 1, 1),
            expand_ratio=1,
            embedding_channels=2,
            input_size=input_size,
        )

    def with_overrides(self, **overrides):
        """A copy with some fields replaced"""
        return replace(self, **overrides)
