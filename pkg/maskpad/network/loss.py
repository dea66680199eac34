"""Binary cross entropy and the combined pixel-wise plus binary loss
"""

import torch

EPSILON = 1e-7


def bce(y, p) -> torch.Tensor:
    """Element-wise -[y log p + (1 - y) log(1 - p)] with p clamped to [eps, 1 - eps]

    Args:
        y: Ground truth in {0, 1}
        p: Predicted probabilities

    Returns:
        torch.Tensor: The loss, shaped like the inputs
    """
    p = torch.as_tensor(p, dtype=torch.float64) if not torch.is_tensor(p) else p
    y = torch.as_tensor(y, dtype=p.dtype, device=p.device)
    p = p.clamp(EPSILON, 1.0 - EPSILON)
    return -(y * torch.log(p) + (1.0 - y) * torch.log(1.0 - p))


def sample_weights(binary_label: torch.Tensor, weights: tuple) -> torch.Tensor:
    """Per-sample class weight: weights[0] for bona fide (1), weights[1] for attacks (0)"""
    w_bona_fide, w_attack = (torch.tensor(float(weight), dtype=binary_label.dtype) for weight in weights)
    return torch.where(binary_label > 0.5, w_bona_fide, w_attack)


def overall_loss(output, label_map, binary_label, lambda_: float = 0.5, class_weight=None) -> torch.Tensor:
    """lambda * weighted mean pixel-wise BCE + (1 - lambda) * weighted binary BCE

    Args:
        output (ModelOutput): map N x g x g (or g x g) and binary N (or scalar)
        label_map: Pixel-wise labels shaped like output.map, PixelLabel grids accepted
        binary_label: Binary labels shaped like output.binary
        lambda_ (float): Weight of the pixel-wise term, in [0, 1]
        class_weight: Per-sample weights shaped like output.binary, a scalar or None for 1

    Raises:
        ValueError: Raised when lambda is outside [0, 1]

    Returns:
        torch.Tensor: Scalar loss averaged over the batch
    """
    if not 0.0 <= lambda_ <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {lambda_}")
    label_map = getattr(label_map, "grid", label_map)
    predicted_map = output.map
    predicted_binary = output.binary
    label_map = torch.as_tensor(label_map, dtype=predicted_map.dtype, device=predicted_map.device)

    pixel = bce(label_map, predicted_map)
    pixel = pixel.mean(dim=(-2, -1))
    binary = bce(binary_label, predicted_binary)

    if class_weight is not None:
        class_weight = torch.as_tensor(class_weight, dtype=pixel.dtype, device=pixel.device)
        pixel = pixel * class_weight
        binary = binary * class_weight
    return lambda_ * pixel.mean() + (1.0 - lambda_) * binary.mean()
