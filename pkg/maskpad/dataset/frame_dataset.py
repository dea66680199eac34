"""torch Dataset over the frames of a set of videos
"""

import numpy as np
import torch
from torch.utils.data import Dataset
from dataset.augment import augment
from dataset.resize import resize_sample


class FrameDataset(Dataset):
    """Every frame of the given videos as (image, label map, binary label) tensors

    Frames come from `load_frame(row, frame_index)`, which reads a corpus directory or renders a
    synthetic corpus. In training mode the augmentation stream of item i in epoch e is
    `default_rng([seed, e, i])`, so batches do not depend on the loader's worker count.
    """

    def __init__(
        self,
        rows: list,
        load_frame,
        pal: bool = True,
        train: bool = False,
        seed: int = 0,
        image_size: int = 224,
        grid_size: int = 14,
    ):
        """Initialise the class

        Args:
            rows (list): ManifestRow entries of the videos to use
            load_frame (callable): (row, frame_index) -> Sample
            pal (bool): Partial attack labels for AM2 frames
            train (bool): Apply augmentation
            seed (int): Seed of the augmentation streams
            image_size (int): Network input side
            grid_size (int): Label cells along each side
        """
        super().__init__()
        self.rows = list(rows)
        self.items = [(row, frame_index) for row in self.rows for frame_index in range(row.n_frames)]
        self.load_frame = load_frame
        self.pal = pal
        self.train = train
        self.seed = seed
        self.image_size = image_size
        self.grid_size = grid_size
        self.epoch = 0

    def set_epoch(self, epoch: int):
        """Select the augmentation streams of an epoch"""
        self.epoch = epoch

    def __len__(self):
        return len(self.items)

    def binary_labels(self) -> np.ndarray:
        """Binary label of every item, 1 = bona fide"""
        return np.array([row.category.binary_label for row, _ in self.items], dtype=np.int64)

    def load(self, index: int) -> tuple:
        """The prepared (Sample, PixelLabel) of an item, before augmentation"""
        row, frame_index = self.items[index]
        sample = self.load_frame(row, frame_index)
        return resize_sample(sample, self.image_size, self.grid_size, pal=self.pal)

    def __getitem__(self, index: int):
        sample, label = self.load(index)
        if self.train:
            rng = np.random.default_rng([self.seed, self.epoch, index])
            sample, label = augment(sample, label, rng)

        image = torch.from_numpy(np.ascontiguousarray(sample.image, dtype=np.float32)).permute(2, 0, 1)
        label_map = torch.from_numpy(label.grid.astype(np.float32))
        binary = torch.tensor(float(sample.category.binary_label), dtype=torch.float32)
        return image, label_map, binary
