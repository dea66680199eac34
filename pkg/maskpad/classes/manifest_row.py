"""One line of the corpus manifest"""

from dataclasses import dataclass
from classes.category import Category, Medium, check_category_medium


@dataclass(frozen=True)
class ManifestRow:
    """A video in the corpus: who, what, how, how many frames and where on disk"""

    video_id: str
    identity: str
    category: Category
    medium: Medium
    n_frames: int
    path: str

    def __post_init__(self):
        object.__setattr__(self, "category", Category(self.category))
        object.__setattr__(self, "medium", Medium(self.medium))
        object.__setattr__(self, "n_frames", int(self.n_frames))
        check_category_medium(self.category, self.medium)
        if self.n_frames <= 0:
            raise ValueError(f"Video {self.video_id} has no frames")
