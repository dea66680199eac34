import os
import sys

import numpy as np

current_dir = os.path.dirname(os.path.abspath(__file__))
src_path = os.path.join(current_dir, "../..", "maskpad")
sys.path.append(src_path)

from classes.category import Category, Medium
from classes.score_record import ScoreRecord


def create_record(video_id: str, category: str, score: float, medium: str = None) -> ScoreRecord:
    category = Category(category)
    if medium is None:
        medium = Medium.BONA_FIDE if category.is_bona_fide else Medium.PRINT
    return ScoreRecord(
        video_id=video_id,
        identity=f"identity_{video_id}",
        category=category,
        medium=Medium(medium),
        score=float(score),
    )


def create_records(entries: list) -> list:
    """Records from (category, medium, score) tuples, video ids in entry order"""
    return [
        create_record(f"video{index:04d}", category, score, medium)
        for index, (category, medium, score) in enumerate(entries)
    ]


def create_random_records(rng: np.random.Generator, n_bona_fide: int, n_attack: int) -> list:
    bona_fide_categories = [Category.BM0, Category.BM1]
    attack_cells = [
        (category, medium)
        for medium in (Medium.PRINT, Medium.REPLAY)
        for category in (Category.AM0, Category.AM1, Category.AM2)
    ]
    entries = []
    for index in range(n_bona_fide):
        entries.append((bona_fide_categories[index % 2], Medium.BONA_FIDE, rng.uniform(0.3, 1.0)))
    for index in range(n_attack):
        category, medium = attack_cells[index % len(attack_cells)]
        entries.append((category, medium, rng.uniform(0.0, 0.7)))
    return create_records(entries)
