"""Per-category error rates at a single dev-anchored threshold
"""

import logging
from dataclasses import dataclass, field
from classes.category import ATTACK_CATEGORIES, ATTACK_MEDIA, Category, Medium
from config import load_presets
from evaluation.metrics import RocCurve, acer, apcer, bpcer, roc, threshold_at_bpcer

logger = logging.getLogger(__name__)

TAU_KINDS = {"all": "bpcer10_all", "unmask": "bpcer10_unmask"}


def rate_columns() -> list:
    """Column names of the per-category cells, in report order"""
    columns = ["bpcer_bm0", "bpcer_bm1"]
    for medium in ATTACK_MEDIA:
        for category in ATTACK_CATEGORIES:
            columns.append(f"apcer_{medium.value}_{category.value.lower()}")
    return columns


@dataclass
class EvalReport:
    """Error rates of a test set in percent, None where a cell has no videos"""

    tau: float
    tau_kind: str
    rates: dict
    counts: dict
    acer: float
    roc: RocCurve = field(repr=False)

    @property
    def auc(self) -> float:
        """Area under the ROC curve"""
        return self.roc.auc

    @property
    def bpcer_bm0(self):
        """BPCER of unmasked bona fide videos"""
        return self.rates["bpcer_bm0"]

    @property
    def bpcer_bm1(self):
        """BPCER of masked bona fide videos"""
        return self.rates["bpcer_bm1"]

    def apcer(self, medium: Medium, category: Category):
        """APCER of one attack cell"""
        return self.rates[f"apcer_{Medium(medium).value}_{Category(category).value.lower()}"]


def _cell_scores(records: list, category: Category, medium: Medium = None) -> list:
    return [
        record.score
        for record in records
        if Category(record.category) == category and (medium is None or Medium(record.medium) == medium)
    ]


def build_report(test_records: list, dev_records: list, threshold: str = "all", target: float = None) -> EvalReport:
    """Evaluate test scores at the threshold anchored on the dev bona fide scores

    Args:
        test_records (list): ScoreRecords of the test set
        dev_records (list): ScoreRecords of the dev set
        threshold (str): 'all' anchors on BM0 + BM1 dev scores, 'unmask' on BM0 only
        target (float): BPCER target. Defaults to the presets (0.10)

    Raises:
        ValueError: Raised when the threshold kind is unknown or a class is missing

    Returns:
        EvalReport: The report
    """
    if threshold not in TAU_KINDS:
        raise ValueError(f"Unknown threshold '{threshold}', expected one of {sorted(TAU_KINDS)}")
    if target is None:
        target = load_presets()["bpcerTarget"]
    tau = threshold_at_bpcer(dev_records, target, threshold)

    rates, counts = {}, {}
    for category in (Category.BM0, Category.BM1):
        scores = _cell_scores(test_records, category)
        column = f"bpcer_{category.value.lower()}"
        counts[column] = len(scores)
        rates[column] = bpcer(scores, tau) if scores else None
    for medium in ATTACK_MEDIA:
        for category in ATTACK_CATEGORIES:
            scores = _cell_scores(test_records, category, medium)
            column = f"apcer_{medium.value}_{category.value.lower()}"
            counts[column] = len(scores)
            rates[column] = apcer(scores, tau) if scores else None

    report = EvalReport(
        tau=tau,
        tau_kind=TAU_KINDS[threshold],
        rates=rates,
        counts=counts,
        acer=acer(test_records, tau),
        roc=roc(test_records),
    )
    logger.info("tau(%s)=%.6f ACER=%.4f AUC=%.4f", report.tau_kind, report.tau, report.acer, report.auc)
    return report
