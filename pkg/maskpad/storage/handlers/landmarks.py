"""Landmark CSV files with header `index,x,y` and 68 rows
"""

import csv
import numpy as np
from classes.landmarks import LandmarkSet, N_LANDMARKS

LANDMARK_FIELDS = ["index", "x", "y"]


def write_landmarks(path, landmarks: LandmarkSet):
    """Write landmarks with full float precision"""
    with open(path, "w", newline="", encoding="utf-8") as landmark_file:
        writer = csv.writer(landmark_file, lineterminator="\n")
        writer.writerow(LANDMARK_FIELDS)
        for index, (x, y) in enumerate(landmarks.points):
            writer.writerow([index, repr(float(x)), repr(float(y))])


def read_landmarks(path, image_width: int, image_height: int) -> LandmarkSet:
    """Read a landmark CSV

    Args:
        path (str | Path): The CSV file
        image_width (int): Width of the image the landmarks belong to
        image_height (int): Height of the image the landmarks belong to

    Raises:
        ValueError: Raised when the header, the row count or the indices are wrong

    Returns:
        LandmarkSet: The landmarks
    """
    with open(path, "r", newline="", encoding="utf-8") as landmark_file:
        reader = csv.DictReader(landmark_file)
        if reader.fieldnames != LANDMARK_FIELDS:
            raise ValueError(f"Landmark header {reader.fieldnames} does not match {LANDMARK_FIELDS}")
        rows = list(reader)

    if len(rows) != N_LANDMARKS:
        raise ValueError(f"Expected {N_LANDMARKS} landmark rows in {path}, got {len(rows)}")
    points = np.zeros((N_LANDMARKS, 2), dtype=np.float64)
    seen = set()
    for row in rows:
        index = int(row["index"])
        if not 0 <= index < N_LANDMARKS or index in seen:
            raise ValueError(f"Invalid or repeated landmark index {index} in {path}")
        seen.add(index)
        points[index] = (float(row["x"]), float(row["y"]))
    return LandmarkSet(points, image_width, image_height)
