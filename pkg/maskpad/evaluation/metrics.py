"""APCER, BPCER and ACER at a BPCER-anchored threshold, plus the ROC sweep

A video is classified as an attack iff its score < tau.
"""

import logging
import math
from dataclasses import dataclass
import numpy as np
from sklearn import metrics
from classes.category import Category

logger = logging.getLogger(__name__)

THRESHOLD_SUBSETS = ("all", "unmask")
MIN_BONA_FIDE = 10


def _as_scores(scores) -> np.ndarray:
    values = np.asarray([getattr(score, "score", score) for score in scores], dtype=np.float64)
    if values.size == 0:
        raise ValueError("Cannot compute a metric on an empty score list")
    return values


def bona_fide_scores(records: list, subset: str = "all") -> np.ndarray:
    """Scores of the bona fide records: BM0 and BM1 for 'all', BM0 only for 'unmask'"""
    if subset not in THRESHOLD_SUBSETS:
        raise ValueError(f"Unknown threshold subset '{subset}', expected one of {THRESHOLD_SUBSETS}")
    wanted = (Category.BM0,) if subset == "unmask" else (Category.BM0, Category.BM1)
    return np.asarray([record.score for record in records if Category(record.category) in wanted], dtype=np.float64)


def attack_scores(records: list) -> np.ndarray:
    """Scores of every attack record"""
    return np.asarray([record.score for record in records if not record.is_bona_fide], dtype=np.float64)


def threshold_at_bpcer(dev_scores, target: float = 0.10, subset: str = "all") -> float:
    """A threshold with empirical BPCER at or below the target that any larger threshold reaches or exceeds

    tau is the k-th smallest bona fide score with k = max(1, ceil(target * N)), so at most
    k - 1 bona fide scores fall strictly below it.

    Args:
        dev_scores: ScoreRecords of the dev set (bona fide ones are selected by subset), or plain
        bona fide scores
        target (float): BPCER target in [0, 1]
        subset (str): 'all' (BM0 + BM1) or 'unmask' (BM0 only), for ScoreRecords

    Raises:
        ValueError: Raised when there is no bona fide score or the target is outside [0, 1]

    Returns:
        float: tau
    """
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"BPCER target must be in [0, 1], got {target}")
    dev_scores = list(dev_scores)
    if dev_scores and hasattr(dev_scores[0], "category"):
        scores = bona_fide_scores(dev_scores, subset)
    else:
        scores = np.asarray(dev_scores, dtype=np.float64)
    if scores.size == 0:
        raise ValueError("No bona fide scores to anchor the threshold on")
    if scores.size < MIN_BONA_FIDE:
        logger.warning("Only %d bona fide dev scores, the BPCER threshold is coarse", scores.size)

    # guard against target * N landing a rounding error above an integer
    k = max(1, math.ceil(target * scores.size - 1e-9))
    return float(np.sort(scores)[k - 1])


def apcer(scores, tau: float) -> float:
    """Percentage of attacks with score >= tau

    Raises:
        ValueError: Raised when the list is empty
    """
    scores = _as_scores(scores)
    return 100.0 * np.count_nonzero(scores >= tau) / scores.size


def bpcer(scores, tau: float) -> float:
    """Percentage of bona fide presentations with score < tau

    Raises:
        ValueError: Raised when the list is empty
    """
    scores = _as_scores(scores)
    return 100.0 * np.count_nonzero(scores < tau) / scores.size


def overall_rates(records: list, tau: float) -> tuple:
    """(APCER over all attacks, BPCER over all bona fide), pooled per video

    Raises:
        ValueError: Raised when either class is missing
    """
    attacks = attack_scores(records)
    bona_fide = bona_fide_scores(records)
    if attacks.size == 0 or bona_fide.size == 0:
        raise ValueError("Both bona fide and attack scores are needed")
    return apcer(attacks, tau), bpcer(bona_fide, tau)


def acer(records: list, tau: float) -> float:
    """Mean of the overall APCER and BPCER, in percent

    Raises:
        ValueError: Raised when either class is missing
    """
    overall_apcer, overall_bpcer = overall_rates(records, tau)
    return (overall_apcer + overall_bpcer) / 2.0


@dataclass
class RocCurve:
    """(tau, APCER, BPCER) at every distinct score, taus increasing, and the AUC"""

    points: list
    auc: float


def roc(records: list) -> RocCurve:
    """Sweep tau over every distinct score

    AUC is P(bona fide score > attack score) with ties counted as one half.

    Raises:
        ValueError: Raised when only one class is present

    Returns:
        RocCurve: The curve and its AUC
    """
    labels = np.asarray([1 if record.is_bona_fide else 0 for record in records])
    scores = np.asarray([record.score for record in records], dtype=np.float64)
    if labels.size == 0 or labels.min() == labels.max():
        raise ValueError("ROC needs both bona fide and attack scores")

    attacks = scores[labels == 0]
    bona_fide = scores[labels == 1]
    points = [(float(tau), apcer(attacks, tau), bpcer(bona_fide, tau)) for tau in np.unique(scores)]
    return RocCurve(points=points, auc=float(metrics.roc_auc_score(labels, scores)))
