"""The five-category sample taxonomy and the presentation media"""

from enum import Enum


class Category(str, Enum):
    """Sample category: bona fide (BM*) or attack (AM*), unmasked (*0), masked (*1) or partial (AM2)"""

    BM0 = "BM0"
    BM1 = "BM1"
    AM0 = "AM0"
    AM1 = "AM1"
    AM2 = "AM2"

    @property
    def is_bona_fide(self) -> bool:
        """Whether the category is a genuine presentation"""
        return self in (Category.BM0, Category.BM1)

    @property
    def binary_label(self) -> int:
        """1 for bona fide, 0 for attack"""
        return 1 if self.is_bona_fide else 0


class Medium(str, Enum):
    """How the face reached the camera"""

    BONA_FIDE = "bona_fide"
    PRINT = "print"
    REPLAY = "replay"


ATTACK_MEDIA = (Medium.PRINT, Medium.REPLAY)
ATTACK_CATEGORIES = (Category.AM0, Category.AM1, Category.AM2)
BONA_FIDE_CATEGORIES = (Category.BM0, Category.BM1)


def check_category_medium(category: Category, medium: Medium):
    """Check a category is presented through a compatible medium

    Args:
        category (Category): The sample category
        medium (Medium): The presentation medium

    Raises:
        ValueError: Raised when a bona fide category is not bona fide media or vice versa
    """
    if category.is_bona_fide != (medium == Medium.BONA_FIDE):
        raise ValueError(
            f"Category {category.value} cannot be presented through medium {medium.value}"
        )
