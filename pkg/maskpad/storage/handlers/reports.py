"""Evaluation report, ROC points and ablation tables as CSV
"""

import csv
from evaluation.report import EvalReport, rate_columns

REPORT_FIELDS = ["row", "tau_kind", "tau"] + rate_columns() + ["acer", "auc"]
ROC_FIELDS = ["tau", "apcer", "bpcer"]


def format_number(value) -> str:
    """Six decimals, empty for a missing value"""
    if value is None:
        return ""
    return f"{float(value):.6f}"


def write_report(path, report: EvalReport):
    """Write the error-rate row and the row of video counts behind each cell"""
    with open(path, "w", newline="", encoding="utf-8") as report_file:
        writer = csv.writer(report_file, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        writer.writerow(
            ["error_rate", report.tau_kind, format_number(report.tau)]
            + [format_number(report.rates[column]) for column in rate_columns()]
            + [format_number(report.acer), format_number(report.auc)]
        )
        writer.writerow(
            ["n_videos", report.tau_kind, ""]
            + [str(report.counts[column]) for column in rate_columns()]
            + [str(sum(report.counts.values())), ""]
        )


def read_report(path) -> dict:
    """Rows of a report keyed by their `row` column"""
    with open(path, "r", newline="", encoding="utf-8") as report_file:
        reader = csv.DictReader(report_file)
        if reader.fieldnames != REPORT_FIELDS:
            raise ValueError(f"Report header {reader.fieldnames} does not match {REPORT_FIELDS}")
        return {row["row"]: row for row in reader}


def write_roc(path, curve):
    """Write every ROC point, taus increasing"""
    with open(path, "w", newline="", encoding="utf-8") as roc_file:
        writer = csv.writer(roc_file, lineterminator="\n")
        writer.writerow(ROC_FIELDS)
        for tau, apcer, bpcer in curve.points:
            writer.writerow([repr(float(tau)), format_number(apcer), format_number(bpcer)])


def write_table(path, fields: list, rows: list):
    """Write dict rows under the given header, numbers with six decimals"""
    with open(path, "w", newline="", encoding="utf-8") as table_file:
        writer = csv.writer(table_file, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow(
                [format_number(row[name]) if isinstance(row[name], float) else row[name] for name in fields]
            )


def read_table(path) -> list:
    """Rows of a CSV table as dicts of strings"""
    with open(path, "r", newline="", encoding="utf-8") as table_file:
        return list(csv.DictReader(table_file))
