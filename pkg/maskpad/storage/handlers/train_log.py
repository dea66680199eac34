"""Training log CSV `epoch,train_loss,dev_loss,dev_acer,lr`
"""

import csv

TRAIN_LOG_FIELDS = ["epoch", "train_loss", "dev_loss", "dev_acer", "lr"]


def write_train_log(path, log):
    """Write one row per completed epoch"""
    with open(path, "w", newline="", encoding="utf-8") as log_file:
        writer = csv.writer(log_file, lineterminator="\n")
        writer.writerow(TRAIN_LOG_FIELDS)
        for record in log.epochs:
            writer.writerow(
                [record.epoch]
                + [repr(float(getattr(record, name))) for name in TRAIN_LOG_FIELDS[1:]]
            )


def read_train_log(path) -> list:
    """Rows of a training log as dicts of floats (epoch as int)"""
    with open(path, "r", newline="", encoding="utf-8") as log_file:
        reader = csv.DictReader(log_file)
        if reader.fieldnames != TRAIN_LOG_FIELDS:
            raise ValueError(f"Training log header {reader.fieldnames} does not match {TRAIN_LOG_FIELDS}")
        return [
            {name: int(row[name]) if name == "epoch" else float(row[name]) for name in TRAIN_LOG_FIELDS}
            for row in reader
        ]
