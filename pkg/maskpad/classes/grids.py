"""Pixel-wise supervision labels and regional weight maps on the patch grid
"""

from dataclasses import dataclass
import numpy as np
from classes.category import Category
from config import load_presets


@dataclass(eq=False)
class PixelLabel:
    """Binary patch grid, 1 = bona fide patch, 0 = attack patch"""

    grid: np.ndarray
    category: Category

    def __post_init__(self):
        self.category = Category(self.category)
        self.grid = np.asarray(self.grid)
        if self.grid.ndim != 2 or self.grid.shape[0] != self.grid.shape[1]:
            raise ValueError(f"Label grid must be square, got shape {self.grid.shape}")
        if not np.all((self.grid == 0) | (self.grid == 1)):
            raise ValueError("Label grid entries must be 0 or 1")
        self.grid = self.grid.astype(np.uint8)

        if self.category.is_bona_fide and not np.all(self.grid == 1):
            raise ValueError(f"{self.category.value} labels must be all ones")
        if self.category in (Category.AM0, Category.AM1) and np.any(self.grid == 1):
            raise ValueError(f"{self.category.value} labels must be all zeros")

    @property
    def grid_size(self) -> int:
        """Number of cells along each side"""
        return self.grid.shape[0]

    def flipped(self):
        """Column-reversed label, the label of the horizontally flipped image"""
        return PixelLabel(self.grid[:, ::-1].copy(), self.category)


@dataclass(frozen=True)
class RegionWeights:
    """Weights for the eye, face-mask and remaining regions"""

    eye: float = 0.6
    mask: float = 0.1
    other: float = 0.3

    def __post_init__(self):
        for name in ("eye", "mask", "other"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"Region weight '{name}' must be positive, got {value}")

    @classmethod
    def from_presets(cls):
        """The weights stored in pad_presets.json"""
        weights = load_presets()["regionWeights"]
        return cls(eye=weights["eye"], mask=weights["mask"], other=weights["other"])

    def scaled(self, factor: float):
        """Multiply every weight by the same factor"""
        return RegionWeights(self.eye * factor, self.mask * factor, self.other * factor)

    def as_tuple(self) -> tuple:
        """(eye, mask, other)"""
        return (self.eye, self.mask, self.other)


@dataclass(eq=False)
class RegionWeightMap:
    """Per-cell weights, each cell carrying one of the configured region weights"""

    grid: np.ndarray
    weights: RegionWeights

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=np.float64)
        if self.grid.ndim != 2 or self.grid.shape[0] != self.grid.shape[1]:
            raise ValueError(f"Weight grid must be square, got shape {self.grid.shape}")
        if not np.all(np.isin(self.grid, self.weights.as_tuple())):
            raise ValueError("Every weight map cell must carry one of the configured weights")

    @property
    def grid_size(self) -> int:
        """Number of cells along each side"""
        return self.grid.shape[0]

    def flipped(self):
        """Column-reversed weight map"""
        return RegionWeightMap(self.grid[:, ::-1].copy(), self.weights)
