"""Derive the face-mask polygon and the eye region from 68-point landmarks
"""

import numpy as np
from classes.landmarks import LandmarkSet
from classes.shapes import MaskPolygon, Rect
from config import load_presets


def mask_polygon(landmarks: LandmarkSet, indices: list = None) -> MaskPolygon:
    """The area a face mask covers: jaw points 1-15 closed through nose-bridge point 28

    Args:
        landmarks (LandmarkSet): The face landmarks
        indices (list): Landmark indices of the polygon, in order. Defaults to the presets

    Raises:
        GeometryError: Raised when the polygon has zero area ("degenerate geometry")
        or intersects itself

    Returns:
        MaskPolygon: The mask polygon in image pixels
    """
    if indices is None:
        indices = load_presets()["maskPolygonIndices"]
    return MaskPolygon(landmarks.select(indices))


def eye_region(
    landmarks: LandmarkSet,
    indices: list = None,
    pad_height: float = None,
    pad_width: float = None,
) -> Rect:
    """Padded bounding box of both eyes and eyebrows, clamped to the image

    The box is grown by pad_height of its own height on the top and on the bottom, and by
    pad_width of its own width on the left and on the right.

    Args:
        landmarks (LandmarkSet): The face landmarks
        indices (list): Eye and eyebrow landmark indices. Defaults to 17-26 and 36-47
        pad_height (float): Vertical padding fraction. Defaults to the presets (0.1)
        pad_width (float): Horizontal padding fraction. Defaults to the presets (0.05)

    Returns:
        Rect: The eye region
    """
    presets = load_presets()
    if indices is None:
        indices = presets["eyeRegionIndices"]
    if pad_height is None:
        pad_height = presets["eyePadding"]["height"]
    if pad_width is None:
        pad_width = presets["eyePadding"]["width"]

    points = landmarks.select(indices)
    x_min, y_min = points.min(axis=0)
    x_max, y_max = points.max(axis=0)
    dx = pad_width * (x_max - x_min)
    dy = pad_height * (y_max - y_min)

    return Rect(
        float(np.clip(x_min - dx, 0, landmarks.image_width)),
        float(np.clip(y_min - dy, 0, landmarks.image_height)),
        float(np.clip(x_max + dx, 0, landmarks.image_width)),
        float(np.clip(y_max + dy, 0, landmarks.image_height)),
    )
