"""Stop training once the monitored dev loss stops improving
"""

import logging

logger = logging.getLogger(__name__)


class EarlyStopping:
    """Counts consecutive epochs without improvement

    Training stops once the counter reaches max(patience, 1), so patience 0 stops after the
    first non-improving epoch.
    """

    def __init__(self, patience=15, min_delta=0.0):
        self.patience = patience
        self.min_delta = min_delta
        self.best_loss = float("inf")
        self.counter = 0

    def __call__(self, val_loss):
        if val_loss < self.best_loss - self.min_delta:
            self.best_loss = val_loss
            self.counter = 0
        else:
            self.counter += 1
            logger.debug("No dev loss improvement for %d epoch(s)", self.counter)

        return self.counter >= max(self.patience, 1)

    @property
    def improved(self) -> bool:
        """Whether the last call set a new best"""
        return self.counter == 0
