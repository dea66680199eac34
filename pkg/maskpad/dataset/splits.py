"""Identity-disjoint train/dev/test protocol splits
"""

import logging
import math
from dataclasses import dataclass, field
import numpy as np
from classes.category import Category

logger = logging.getLogger(__name__)

SPLIT_NAMES = ("train", "dev", "test")


@dataclass
class ProtocolSplit:
    """Video ids and identities of each split"""

    train: list
    dev: list
    test: list
    identities: dict = field(default_factory=dict)

    def __post_init__(self):
        names = [name for name in SPLIT_NAMES if name in self.identities]
        for index, first in enumerate(names):
            for second in names[index + 1 :]:
                shared = set(self.identities[first]) & set(self.identities[second])
                if shared:
                    raise ValueError(f"Identities {sorted(shared)} appear in both {first} and {second}")

    def video_ids(self, name: str) -> list:
        """Video ids of the named split"""
        if name not in SPLIT_NAMES:
            raise ValueError(f"Unknown split '{name}', expected one of {SPLIT_NAMES}")
        return getattr(self, name)

    def rows(self, manifest: list, name: str) -> list:
        """Manifest rows of the named split, in manifest order"""
        wanted = set(self.video_ids(name))
        return [row for row in manifest if row.video_id in wanted]


def split_sizes(n_identities: int) -> tuple:
    """(train, dev, test) identity counts: 20% each for dev and test, at least one, rest to train"""
    n_held_out = max(1, math.floor(0.2 * n_identities))
    return (n_identities - 2 * n_held_out, n_held_out, n_held_out)


def split_protocol(manifest: list, seed: int) -> ProtocolSplit:
    """Partition identities 60/20/20 and keep every video of an identity in its split

    Args:
        manifest (list): ManifestRow entries
        seed (int): Seed of the identity shuffle

    Raises:
        ValueError: Raised when the manifest is empty, has fewer than 3 identities or a split
        misses one of the five categories

    Returns:
        ProtocolSplit: The split
    """
    if not manifest:
        raise ValueError("Cannot split an empty manifest")
    identities = sorted({row.identity for row in manifest})
    if len(identities) < 3:
        raise ValueError(f"At least 3 identities are needed, got {len(identities)}")

    order = np.random.default_rng(seed).permutation(len(identities))
    shuffled = [identities[index] for index in order]
    n_train, n_dev, _ = split_sizes(len(identities))
    assigned = {
        "train": sorted(shuffled[:n_train]),
        "dev": sorted(shuffled[n_train : n_train + n_dev]),
        "test": sorted(shuffled[n_train + n_dev :]),
    }

    videos = {}
    for name in SPLIT_NAMES:
        members = set(assigned[name])
        rows = [row for row in manifest if row.identity in members]
        missing = set(Category) - {row.category for row in rows}
        if missing:
            raise ValueError(
                f"Split '{name}' has no videos of {sorted(category.value for category in missing)}"
            )
        videos[name] = [row.video_id for row in rows]

    logger.info(
        "Protocol split: %d/%d/%d identities, %d/%d/%d videos",
        *(len(assigned[name]) for name in SPLIT_NAMES),
        *(len(videos[name]) for name in SPLIT_NAMES),
    )
    return ProtocolSplit(videos["train"], videos["dev"], videos["test"], identities=assigned)
