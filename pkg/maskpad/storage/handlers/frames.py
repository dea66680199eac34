"""Frames of a corpus video: one PNG and one landmark CSV per frame
"""

import numpy as np
from PIL import Image
from classes.manifest_row import ManifestRow
from classes.sample import Sample
from storage.handlers.artifact_handler import ArtifactHandler
from storage.handlers.landmarks import read_landmarks, write_landmarks


def write_image(path, image: np.ndarray):
    """Write an H x W x 3 float image in [0, 1] as an 8-bit PNG"""
    pixels = np.clip(np.rint(np.asarray(image, dtype=np.float64) * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(pixels, mode="RGB").save(path, format="PNG")


def read_image(path) -> np.ndarray:
    """Read a PNG as an H x W x 3 float32 image in [0, 1]"""
    with Image.open(path) as image:
        pixels = np.asarray(image.convert("RGB"), dtype=np.float32)
    return pixels / np.float32(255.0)


class Frames(ArtifactHandler):
    """The per-video frame directories of a corpus"""

    def __init__(self, context):
        """Initialise the class

        Args:
            context (Path): The corpus directory
        """
        super().__init__(context, file_name="videos")

    def image_path(self, row: ManifestRow, frame_index: int):
        """Path of a frame PNG"""
        return self._context / row.path / f"frame_{frame_index:03d}.png"

    def landmarks_path(self, row: ManifestRow, frame_index: int):
        """Path of a frame landmark CSV"""
        return self._context / row.path / f"frame_{frame_index:03d}_landmarks.csv"

    def save(self, row: ManifestRow, sample: Sample):
        """Write a frame and its landmarks"""
        image_path = self.image_path(row, sample.frame_index)
        image_path.parent.mkdir(parents=True, exist_ok=True)
        write_image(image_path, sample.image)
        if sample.landmarks is not None:
            write_landmarks(self.landmarks_path(row, sample.frame_index), sample.landmarks)

    def load(self, row: ManifestRow, frame_index: int) -> Sample:
        """Read a frame back as a Sample

        Raises:
            FileNotFoundError: Raised when the frame PNG does not exist
        """
        image = read_image(self.image_path(row, frame_index))
        landmarks_path = self.landmarks_path(row, frame_index)
        landmarks = None
        if landmarks_path.exists():
            landmarks = read_landmarks(landmarks_path, image.shape[1], image.shape[0])
        return Sample(
            image=image,
            category=row.category,
            medium=row.medium,
            identity=row.identity,
            landmarks=landmarks,
            frame_index=frame_index,
            video_id=row.video_id,
        )

    def load_video(self, row: ManifestRow) -> list:
        """Read every frame of a video"""
        return [self.load(row, frame_index) for frame_index in range(row.n_frames)]
