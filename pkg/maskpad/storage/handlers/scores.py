"""Scores CSV `video_id,identity,category,medium,score`, the contract between scoring and evaluation
"""

import csv
from classes.score_record import ScoreRecord
from classes.category import Category, Medium

SCORE_FIELDS = ["video_id", "identity", "category", "medium", "score"]


def write_scores(path, records: list):
    """Write score records in the given order, scores at full precision"""
    with open(path, "w", newline="", encoding="utf-8") as scores_file:
        writer = csv.writer(scores_file, lineterminator="\n")
        writer.writerow(SCORE_FIELDS)
        for record in records:
            writer.writerow(
                [
                    record.video_id,
                    record.identity,
                    Category(record.category).value,
                    Medium(record.medium).value,
                    repr(float(record.score)),
                ]
            )


def read_scores(path) -> list:
    """Read a scores CSV

    Raises:
        ValueError: Raised when the header is wrong, a score is not finite or a video repeats

    Returns:
        list: ScoreRecords in file order
    """
    with open(path, "r", newline="", encoding="utf-8") as scores_file:
        reader = csv.DictReader(scores_file)
        if reader.fieldnames != SCORE_FIELDS:
            raise ValueError(f"Scores header {reader.fieldnames} does not match {SCORE_FIELDS}")
        records = []
        seen = set()
        for line in reader:
            score = float(line["score"])
            if score != score or score in (float("inf"), float("-inf")):
                raise ValueError(f"Score of {line['video_id']} is not finite")
            if line["video_id"] in seen:
                raise ValueError(f"Video {line['video_id']} appears twice in {path}")
            seen.add(line["video_id"])
            records.append(
                ScoreRecord(
                    video_id=line["video_id"],
                    identity=line["identity"],
                    category=Category(line["category"]),
                    medium=Medium(line["medium"]),
                    score=score,
                )
            )
    return records
