"""Build a backbone from its config, run it on frames and collect gradients
"""

import numpy as np
import torch
from network.base import ModelOutput, PixelSupervisedNet
from network.dense_pix import DensePixNet
from network.mix_pix import MixPixNet
from network.model_config import ModelConfig

BACKBONES = {"dense_pix": DensePixNet, "mix_pix": MixPixNet}


def build_model(config: ModelConfig) -> PixelSupervisedNet:
    """Initialise the backbone named by config.variant from its seed

    Layer construction draws from a forked generator, so the global torch stream is left as it was.
    """
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(config.seed)
        return BACKBONES[config.variant](config)


def to_batch(images) -> torch.Tensor:
    """Turn an H x W x 3 image, a list of them or an N x H x W x 3 array into N x 3 x H x W"""
    if torch.is_tensor(images):
        return images
    array = np.asarray(images, dtype=np.float32)
    if array.ndim == 3:
        array = array[None]
    if array.ndim != 4 or array.shape[-1] != 3:
        raise ValueError(f"Expected H x W x 3 images, got shape {array.shape}")
    return torch.from_numpy(np.ascontiguousarray(array)).permute(0, 3, 1, 2)


def predict(model: PixelSupervisedNet, images) -> ModelOutput:
    """Evaluation-mode forward pass without gradients

    Args:
        model (PixelSupervisedNet): The model, left in eval mode
        images: One H x W x 3 image in [0, 1], a batch of them or an N x 3 x H x W tensor

    Raises:
        ValueError: Raised when the images do not have the model's input shape

    Returns:
        ModelOutput: The map and binary probabilities
    """
    model.eval()
    parameter = next(model.parameters())
    batch = to_batch(images).to(device=parameter.device, dtype=parameter.dtype)
    with torch.no_grad():
        return model(batch)


def backward(model: PixelSupervisedNet, loss: torch.Tensor) -> dict:
    """Back-propagate a loss and return a copy of every parameter's gradient by name"""
    model.zero_grad(set_to_none=False)
    loss.backward()
    gradients = {}
    for name, parameter in model.named_parameters():
        if parameter.grad is None:
            gradients[name] = torch.zeros_like(parameter)
        else:
            gradients[name] = parameter.grad.detach().clone()
    return gradients
