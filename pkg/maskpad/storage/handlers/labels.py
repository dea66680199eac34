"""Per-frame label grids, weight maps and previews written by the labels command
"""

import numpy as np
from PIL import Image
from classes.manifest_row import ManifestRow
from storage.handlers.artifact_handler import ArtifactHandler
from storage.handlers.grids import write_grid

PREVIEW_CELL = 16


def preview_image(label_grid: np.ndarray, weight_grid: np.ndarray, cell: int = PREVIEW_CELL) -> np.ndarray:
    """Label (white = bona fide) and weight map (brighter = heavier) side by side, 8-bit RGB"""
    label = np.asarray(label_grid, dtype=np.float64)
    weights = np.asarray(weight_grid, dtype=np.float64)
    weights = weights / weights.max() if weights.max() > 0 else weights
    panels = []
    for grid in (label, weights):
        panels.append(np.kron(grid, np.ones((cell, cell))))
    separator = np.full((label.shape[0] * cell, cell // 2), 0.5)
    gray = np.concatenate([panels[0], separator, panels[1]], axis=1)
    return np.repeat(np.rint(gray * 255).astype(np.uint8)[..., None], 3, axis=2)


class Labels(ArtifactHandler):
    """Label output directory, one folder per video"""

    def __init__(self, context):
        """Initialise the class

        Args:
            context (Path): The labels output directory
        """
        super().__init__(context, file_name="labels")

    def label_path(self, row: ManifestRow, frame_index: int):
        """Path of a frame's pixel-wise label grid"""
        return self.path / row.video_id / f"frame_{frame_index:03d}_label.txt"

    def weights_path(self, row: ManifestRow, frame_index: int):
        """Path of a frame's region weight map"""
        return self.path / row.video_id / f"frame_{frame_index:03d}_weights.txt"

    def preview_path(self, row: ManifestRow, frame_index: int):
        """Path of a frame's preview PNG"""
        return self.path / row.video_id / f"frame_{frame_index:03d}_preview.png"

    def save(self, row: ManifestRow, frame_index: int, label, weight_map, preview: bool = False):
        """Write the label and weight grids of a frame, and optionally the preview"""
        label_path = self.label_path(row, frame_index)
        label_path.parent.mkdir(parents=True, exist_ok=True)
        write_grid(label_path, label.grid)
        write_grid(self.weights_path(row, frame_index), weight_map.grid)
        if preview:
            Image.fromarray(preview_image(label.grid, weight_map.grid), mode="RGB").save(
                self.preview_path(row, frame_index), format="PNG"
            )
