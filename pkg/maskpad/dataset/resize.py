"""Bring frames of any resolution to the network input size
"""

from dataclasses import replace
import numpy as np
import torch
import torch.nn.functional as F
from classes.category import Category
from classes.sample import Sample
from classes.shapes import MaskPolygon
from geometry.rasterize import binary_label_map, rasterize_label
from geometry.regions import mask_polygon


def resize_image(image: np.ndarray, target_size: int = 224) -> np.ndarray:
    """Bilinear resize of an H x W x 3 image to target_size x target_size

    Raises:
        ValueError: Raised when the image or the target has a non-positive dimension
    """
    image = np.asarray(image, dtype=np.float32)
    if image.ndim != 3 or image.shape[0] <= 0 or image.shape[1] <= 0:
        raise ValueError(f"Expected an H x W x 3 image with positive dimensions, got {image.shape}")
    if target_size <= 0:
        raise ValueError("Target size must be positive")
    if image.shape[0] == target_size and image.shape[1] == target_size:
        return image.copy()
    tensor = torch.from_numpy(np.ascontiguousarray(image)).permute(2, 0, 1).unsqueeze(0)
    resized = F.interpolate(tensor, size=(target_size, target_size), mode="bilinear", align_corners=False)
    return resized.squeeze(0).permute(1, 2, 0).contiguous().numpy()


def resize_pair(
    image: np.ndarray,
    polygon: MaskPolygon,
    category: Category,
    target_size: int = 224,
    grid_size: int = 14,
) -> tuple:
    """Resize a frame and regenerate its label from the scaled polygon

    Labels are never interpolated, so entries stay binary.

    Args:
        image (np.ndarray): H x W x 3 image
        polygon (MaskPolygon): Mask polygon in the input image's pixels. Only used for AM2
        category (Category): Sample category
        target_size (int): Output side in pixels
        grid_size (int): Label cells along each side

    Raises:
        ValueError: Raised when a dimension is not positive

    Returns:
        tuple: (target_size x target_size x 3 image, PixelLabel)
    """
    image = np.asarray(image)
    if image.ndim != 3 or image.shape[0] <= 0 or image.shape[1] <= 0:
        raise ValueError(f"Expected an H x W x 3 image with positive dimensions, got {image.shape}")
    height, width = image.shape[:2]
    resized = resize_image(image, target_size)
    scaled = None
    if polygon is not None:
        scaled = polygon.scaled(target_size / width, target_size / height)
    label = rasterize_label(scaled, category, (target_size, target_size), grid_size)
    return resized, label


def resize_sample(sample: Sample, target_size: int = 224, grid_size: int = 14, pal: bool = True) -> tuple:
    """Resize a frame with its landmarks and build its label at the target size

    Args:
        sample (Sample): The frame
        target_size (int): Output side in pixels
        grid_size (int): Label cells along each side
        pal (bool): Partial attack labels for AM2. When off every attack gets the zero map

    Raises:
        ValueError: Raised when an AM2 frame needs a partial label but has no landmarks

    Returns:
        tuple: (resized Sample, PixelLabel)
    """
    if pal and sample.category == Category.AM2:
        if sample.landmarks is None:
            raise ValueError(f"Frame {sample.frame_index} of {sample.video_id} has no landmarks")
        image, label = resize_pair(
            sample.image, mask_polygon(sample.landmarks), sample.category, target_size, grid_size
        )
    else:
        image = resize_image(sample.image, target_size)
        label = binary_label_map(sample.category, grid_size)

    landmarks = None
    if sample.landmarks is not None:
        landmarks = sample.landmarks.scaled(target_size, target_size)
    return replace(sample, image=image, landmarks=landmarks), label
