"""Polygon and rectangle types for mask and eye regions
"""

from dataclasses import dataclass
import numpy as np
from shapely.geometry import LinearRing, Polygon


class GeometryError(ValueError):
    """Raised when landmarks produce unusable region geometry"""


def polygon_area(vertices: np.ndarray) -> float:
    """Unsigned area of a closed polygon given its vertices in order, 0 below three vertices"""
    if len(vertices) < 3:
        return 0.0
    return float(Polygon(vertices).area)


@dataclass(eq=False)
class MaskPolygon:
    """Closed simple polygon in pixel coordinates (the last vertex joins the first)"""

    vertices: np.ndarray

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=np.float64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 2:
            raise ValueError(f"Vertices must have shape (n, 2), got {self.vertices.shape}")
        if len(self.vertices) < 3:
            raise GeometryError("degenerate geometry")
        if not np.all(np.isfinite(self.vertices)):
            raise ValueError("Polygon vertices must be finite")
        if self.area <= 0.0:
            raise GeometryError("degenerate geometry")
        if not LinearRing(self.vertices).is_simple:
            raise GeometryError("self-intersecting polygon")

    @property
    def area(self) -> float:
        """Unsigned polygon area"""
        return polygon_area(self.vertices)

    def mirrored(self, image_width: float):
        """Reflect the polygon about the vertical centre line of an image"""
        vertices = self.vertices.copy()
        vertices[:, 0] = image_width - vertices[:, 0]
        return MaskPolygon(vertices)

    def scaled(self, factor_x: float, factor_y: float):
        """Scale the polygon about the image origin"""
        return MaskPolygon(self.vertices * np.array([factor_x, factor_y]))


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle [x0, x1] x [y0, y1] in pixel coordinates"""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError(f"Invalid rectangle {self}")

    @property
    def width(self) -> float:
        """Rectangle width"""
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        """Rectangle height"""
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        """Rectangle area"""
        return self.width * self.height

    def contains_points(self, points: np.ndarray) -> bool:
        """Whether every point lies inside or on the rectangle"""
        points = np.asarray(points, dtype=np.float64)
        return bool(
            np.all(
                (points[:, 0] >= self.x0)
                & (points[:, 0] <= self.x1)
                & (points[:, 1] >= self.y0)
                & (points[:, 1] <= self.y1)
            )
        )

    def mirrored(self, image_width: float):
        """Reflect the rectangle about the vertical centre line of an image"""
        return Rect(image_width - self.x1, self.y0, image_width - self.x0, self.y1)
