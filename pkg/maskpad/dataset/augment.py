"""Training-time augmentation: joint horizontal flip and colour jitter
"""

import numpy as np
import torch
import torchvision.transforms.functional as TF
from classes.grids import PixelLabel
from classes.sample import Sample

JITTER_MAGNITUDE = 0.2


def flip(sample: Sample, label: PixelLabel) -> tuple:
    """Mirror the image, its landmarks and the label together"""
    return sample.flipped(), label.flipped()


def color_jitter(image: np.ndarray, factors: tuple) -> np.ndarray:
    """Apply brightness, contrast and saturation factors to an H x W x 3 image in [0, 1]

    Args:
        image (np.ndarray): The image
        factors (tuple): (brightness, contrast, saturation) multipliers around 1

    Returns:
        np.ndarray: The jittered image, still in [0, 1]
    """
    brightness, contrast, saturation = factors
    tensor = torch.from_numpy(np.ascontiguousarray(image, dtype=np.float32)).permute(2, 0, 1)
    tensor = TF.adjust_brightness(tensor, brightness)
    tensor = TF.adjust_contrast(tensor, contrast)
    tensor = TF.adjust_saturation(tensor, saturation)
    return tensor.permute(1, 2, 0).contiguous().numpy()


def augment(
    sample: Sample,
    label: PixelLabel,
    rng: np.random.Generator,
    flip_p: float = 0.5,
    jitter_p: float = 0.5,
    magnitude: float = JITTER_MAGNITUDE,
) -> tuple:
    """Randomly flip and jitter a training frame

    The random stream is consumed the same way whatever is applied, so one draw per item keeps
    later items reproducible.

    Args:
        sample (Sample): The frame
        label (PixelLabel): Its pixel-wise label
        rng (np.random.Generator): The caller's random stream
        flip_p (float): Probability of a horizontal flip
        jitter_p (float): Probability of colour jitter
        magnitude (float): Jitter factors are drawn from [1 - magnitude, 1 + magnitude]

    Returns:
        tuple: (Sample, PixelLabel), the label is only changed by the flip
    """
    do_flip = rng.random() < flip_p
    do_jitter = rng.random() < jitter_p
    factors = tuple(1.0 + rng.uniform(-magnitude, magnitude, size=3))

    if do_flip:
        sample, label = flip(sample, label)
    if do_jitter and magnitude > 0:
        sample = Sample(
            image=color_jitter(sample.image, factors),
            category=sample.category,
            medium=sample.medium,
            identity=sample.identity,
            landmarks=sample.landmarks,
            frame_index=sample.frame_index,
            video_id=sample.video_id,
        )
    return sample, label
