"""The 68-point facial landmark set all region geometry is derived from
"""

from dataclasses import dataclass
import numpy as np
from shapely.geometry import LineString

N_LANDMARKS = 68
JAW = range(0, 17)
EYEBROWS = range(17, 27)
NOSE = range(27, 36)
EYES = range(36, 48)
MOUTH = range(48, 68)


@dataclass(eq=False)
class LandmarkSet:
    """68 (x, y) points in continuous pixel coordinates, standard 0-based indexing

    Pixel column i spans [i, i + 1), so the image covers [0, width] x [0, height].
    """

    points: np.ndarray
    image_width: int
    image_height: int

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.shape != (N_LANDMARKS, 2):
            raise ValueError(
                f"Expected {N_LANDMARKS} landmarks of shape (68, 2), got {self.points.shape}"
            )
        if not np.all(np.isfinite(self.points)):
            raise ValueError("Landmark coordinates must be finite")
        if int(self.image_width) <= 0 or int(self.image_height) <= 0:
            raise ValueError("Image dimensions must be positive")
        self.image_width = int(self.image_width)
        self.image_height = int(self.image_height)
        if not LineString(self.points[JAW.start : JAW.stop]).is_simple:
            raise ValueError("Jaw landmarks 0-16 must form a simple polyline")

    def select(self, indices) -> np.ndarray:
        """Return the points at the given indices, in order"""
        return self.points[list(indices)]

    def mirrored(self):
        """Reflect every point about the vertical centre line of the image

        Returns:
            LandmarkSet: The reflected landmarks, indices unchanged
        """
        points = self.points.copy()
        points[:, 0] = self.image_width - points[:, 0]
        return LandmarkSet(points, self.image_width, self.image_height)

    def scaled(self, new_width: int, new_height: int):
        """Rescale the landmarks to a resized image

        Args:
            new_width (int): Width of the resized image
            new_height (int): Height of the resized image

        Returns:
            LandmarkSet: The rescaled landmarks
        """
        factors = np.array(
            [new_width / self.image_width, new_height / self.image_height]
        )
        return LandmarkSet(self.points * factors, new_width, new_height)

    def translated(self, dx: float, dy: float):
        """Shift every point by (dx, dy)"""
        return LandmarkSet(
            self.points + np.array([dx, dy]), self.image_width, self.image_height
        )
