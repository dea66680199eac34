"""Video-level PAD score, the contract between inference and evaluation"""

from dataclasses import dataclass
from classes.category import Category, Medium


@dataclass(frozen=True)
class ScoreRecord:
    """Mean frame score of one video, higher means more bona fide"""

    video_id: str
    identity: str
    category: Category
    medium: Medium
    score: float
    n_frames: int = 1

    @property
    def is_bona_fide(self) -> bool:
        """Whether the video is a genuine presentation"""
        return Category(self.category).is_bona_fide
