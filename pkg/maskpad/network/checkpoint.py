"""Checkpoint directories: manifest.json plus one little-endian blob per state entry
"""

import json
import logging
from dataclasses import asdict
from pathlib import Path
import numpy as np
import torch
from network.base import PixelSupervisedNet
from network.model import build_model
from network.model_config import ModelConfig

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"
FLOAT_DTYPE = "<f4"
INT_DTYPE = "<i8"


def _blob_name(index: int, name: str) -> str:
    return f"{index:04d}_{name}.bin"


def save_checkpoint(model: PixelSupervisedNet, directory, metadata: dict = None) -> Path:
    """Write the model's config and state to a directory

    Args:
        model (PixelSupervisedNet): The model
        directory (str | Path): Destination, created if needed
        metadata (dict): Training metadata stored in the manifest

    Returns:
        Path: The manifest path
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for index, (name, tensor) in enumerate(model.state_dict().items()):
        array = tensor.detach().cpu().numpy()
        dtype = FLOAT_DTYPE if np.issubdtype(array.dtype, np.floating) else INT_DTYPE
        file_name = _blob_name(index, name)
        (directory / file_name).write_bytes(np.ascontiguousarray(array, dtype=dtype).tobytes())
        entries.append({"name": name, "shape": list(array.shape), "dtype": dtype, "file": file_name})

    manifest = {
        "config": asdict(model.config),
        "tensors": entries,
        "metadata": metadata or {},
    }
    manifest_path = directory / MANIFEST_FILE
    with open(manifest_path, "w", encoding="utf-8") as manifest_file:
        json.dump(manifest, manifest_file, indent=2, sort_keys=True)
        manifest_file.write("\n")
    logger.info("Saved checkpoint with %d tensors to %s", len(entries), directory)
    return manifest_path


def read_checkpoint_manifest(directory) -> dict:
    """The parsed manifest.json of a checkpoint directory

    Raises:
        FileNotFoundError: Raised when the directory has no manifest
    """
    manifest_path = Path(directory) / MANIFEST_FILE
    if not manifest_path.exists():
        raise FileNotFoundError(f"No checkpoint manifest at {manifest_path}")
    with open(manifest_path, "r", encoding="utf-8") as manifest_file:
        return json.load(manifest_file)


def load_checkpoint(directory, model: PixelSupervisedNet = None) -> PixelSupervisedNet:
    """Restore a model from a checkpoint directory

    Args:
        directory (str | Path): The checkpoint directory
        model (PixelSupervisedNet): Model to load into. Built from the stored config if omitted

    Raises:
        ValueError: Raised when a stored shape or name does not match the model

    Returns:
        PixelSupervisedNet: The model in eval mode
    """
    directory = Path(directory)
    manifest = read_checkpoint_manifest(directory)
    if model is None:
        model = build_model(ModelConfig(**manifest["config"]))

    state = model.state_dict()
    stored_names = [entry["name"] for entry in manifest["tensors"]]
    if sorted(stored_names) != sorted(state.keys()):
        raise ValueError("Checkpoint entries do not match the model's state")

    loaded = {}
    for entry in manifest["tensors"]:
        expected = state[entry["name"]]
        if list(expected.shape) != entry["shape"]:
            raise ValueError(
                f"Shape mismatch for '{entry['name']}': checkpoint {entry['shape']}, model {list(expected.shape)}"
            )
        array = np.frombuffer((directory / entry["file"]).read_bytes(), dtype=entry["dtype"])
        array = array.reshape(entry["shape"])
        loaded[entry["name"]] = torch.from_numpy(array.copy()).to(dtype=expected.dtype)
    model.load_state_dict(loaded)
    model.eval()
    return model
