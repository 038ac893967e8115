"""Sort-and-regress baseline learners.

Both learners sort the variables by a per-column statistic (ascending), then
regress each variable on all of its predecessors in that order using least
squares on centered but otherwise unscaled columns, and keep an edge wherever
the absolute coefficient exceeds a threshold. The output is acyclic by
construction. These are deliberately simple order-based, scale-sensitive
learners: both the ordering statistic and the coefficient threshold see the
data on its original scale, so informative variances help them and
column-standardized input gives them nothing to exploit. They use plain least
squares with coefficient thresholding rather than any penalized regression.
"""

from __future__ import annotations

import numpy as np

from .errors import RankDeficientDataError
from .metrics import Pdag, sample_r2, varsortability_scores
from .simdata import Dataset

__all__ = ["var_sort_regress", "r2_sort_regress"]

DEFAULT_THRESHOLD = 0.1


def _sort_regress(d: Dataset, scores: np.ndarray, threshold: float) -> Pdag:
    if threshold < 0 or np.isnan(threshold):
        raise ValueError(f"threshold must be nonnegative, got {threshold}")
    if d.n <= d.p:
        raise RankDeficientDataError(
            f"need more rows than columns, got n={d.n}, p={d.p}"
        )
    sd = d.values.std(axis=0, ddof=1)
    if np.any(sd == 0):
        raise RankDeficientDataError("a column has zero sample variance")
    # Centering absorbs the intercept without touching coefficient scale.
    X = d.values - d.values.mean(axis=0)
    # Stable sort: equal scores keep their original column order.
    order = np.argsort(scores, kind="stable")
    edges: set[tuple[int, int]] = set()
    for k in range(1, d.p):
        target = int(order[k])
        preds = order[:k]
        coef, _, rank, _ = np.linalg.lstsq(X[:, preds], X[:, target], rcond=None)
        if rank < k:
            raise RankDeficientDataError(
                "predecessor columns are collinear; regression is rank deficient"
            )
        for j, c in zip(preds, coef):
            if abs(c) > threshold:
                edges.add((int(j) + 1, target + 1))
    return Pdag(d.p, frozenset(edges), frozenset())


def var_sort_regress(d: Dataset, threshold: float = DEFAULT_THRESHOLD) -> Pdag:
    """Order by ascending sample variance, then regress and threshold."""
    return _sort_regress(d, varsortability_scores(d), threshold)


def r2_sort_regress(d: Dataset, threshold: float = DEFAULT_THRESHOLD) -> Pdag:
    """Order by ascending sample R^2, then regress and threshold.

    The ordering statistic is the fraction of each variable's variance
    explained by all the other variables, which is invariant to rescaling
    any column; the coefficients and threshold are not, so the estimate
    still depends on the scale of the input columns.
    """
    return _sort_regress(d, sample_r2(d), threshold)
