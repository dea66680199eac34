"""One video frame with its metadata
"""

from dataclasses import dataclass, replace
from typing import Optional
import numpy as np
from classes.category import Category, Medium, check_category_medium
from classes.landmarks import LandmarkSet


@dataclass(eq=False)
class Sample:
    """A frame of a bona fide or attack video

    The image is H x W x 3 float32 in [0, 1].
    """

    image: np.ndarray
    category: Category
    medium: Medium
    identity: str
    landmarks: Optional[LandmarkSet]
    frame_index: int
    video_id: str

    def __post_init__(self):
        self.category = Category(self.category)
        self.medium = Medium(self.medium)
        check_category_medium(self.category, self.medium)
        self.image = np.asarray(self.image, dtype=np.float32)
        if self.image.ndim != 3 or self.image.shape[2] != 3:
            raise ValueError(f"Expected an H x W x 3 image, got shape {self.image.shape}")
        if self.landmarks is not None and (
            self.landmarks.image_width != self.image.shape[1]
            or self.landmarks.image_height != self.image.shape[0]
        ):
            raise ValueError("Landmarks were not measured on an image of this size")

    @property
    def image_size(self) -> tuple:
        """(width, height)"""
        return (self.image.shape[1], self.image.shape[0])

    def flipped(self):
        """The horizontally mirrored frame"""
        landmarks = self.landmarks.mirrored() if self.landmarks is not None else None
        return replace(
            self, image=np.ascontiguousarray(self.image[:, ::-1, :]), landmarks=landmarks
        )
