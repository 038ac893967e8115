"""Sortability diagnostics and graph-comparison metrics.

Graph comparison classifies every unordered vertex pair by its status in
the true DAG (edge or no edge) and in the estimate (directed, undirected,
or absent), and accumulates adjacency and orientation confusion counts:

    true a->b, estimated a->b        adjacency tp, orientation tp and tn
    true a->b, estimated b->a        adjacency tp, orientation fp and fn
    true a->b, estimated a - b       adjacency tp, orientation fn
    true a->b, no estimated edge     adjacency fn, orientation fn
    no true edge, estimated directed adjacency fp, orientation fp
    no true edge, estimated a - b    adjacency fp
    no true edge, no estimated edge  adjacency tn

Orientation cells for true non-edges are left uncounted except for the
false positive a spurious directed edge earns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg, stats

from .errors import RankDeficientDataError, SingularMatrixError
from .graph import Dag
from .simdata import Dataset

__all__ = [
    "Pdag",
    "PairCounts",
    "ConfusionCounts",
    "PrecisionRecall",
    "compare_graphs",
    "precision_recall",
    "population_r2",
    "sample_r2",
    "sortability_rank_corr",
    "varsortability_scores",
]


@dataclass(frozen=True)
class Pdag:
    """A partially directed graph: directed plus undirected edges.

    ``directed`` holds (parent, child) pairs; ``undirected`` holds unordered
    pairs, normalized to (min, max). No pair may appear in both sets (in
    either orientation) or in both directions of ``directed``, and
    self-loops are rejected. Full equivalence-class semantics are not
    enforced; this is a container for estimated structures.
    """

    p: int
    directed: frozenset[tuple[int, int]] = frozenset()
    undirected: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"vertex count must be positive, got {self.p}")
        directed = frozenset((int(a), int(b)) for a, b in self.directed)
        undirected = frozenset(
            (min(int(a), int(b)), max(int(a), int(b))) for a, b in self.undirected
        )
        for a, b in directed | undirected:
            if not (1 <= a <= self.p and 1 <= b <= self.p):
                raise ValueError(f"edge ({a}, {b}) outside vertex range 1..{self.p}")
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
        dir_pairs = {(min(a, b), max(a, b)) for a, b in directed}
        if len(dir_pairs) != len(directed):
            raise ValueError("a pair appears in both directions of directed")
        if dir_pairs & undirected:
            raise ValueError("a pair appears in both directed and undirected sets")
        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "undirected", undirected)

    @classmethod
    def from_dag(cls, g: Dag) -> "Pdag":
        return cls(g.p, frozenset(g.edges), frozenset())


@dataclass(frozen=True)
class PairCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0


@dataclass(frozen=True)
class ConfusionCounts:
    adjacency: PairCounts
    orientation: PairCounts


@dataclass(frozen=True)
class PrecisionRecall:
    adjacency_precision: float
    adjacency_recall: float
    orientation_precision: float
    orientation_recall: float


def compare_graphs(truth: Dag, estimate: Pdag) -> ConfusionCounts:
    """Adjacency and orientation confusion counts per the table above.

    The adjacency counts partition all p(p-1)/2 unordered pairs. Raises
    ValueError when the vertex counts differ.
    """
    if truth.p != estimate.p:
        raise ValueError(
            f"vertex counts differ: truth {truth.p}, estimate {estimate.p}"
        )
    true_edges = truth.edges
    est_dir = estimate.directed
    est_und = estimate.undirected
    a_tp = a_fp = a_fn = a_tn = 0
    o_tp = o_fp = o_fn = o_tn = 0
    for a in range(1, truth.p + 1):
        for b in range(a + 1, truth.p + 1):
            if (a, b) in true_edges:
                true_dir = (a, b)
            elif (b, a) in true_edges:
                true_dir = (b, a)
            else:
                true_dir = None
            if (a, b) in est_dir:
                est = (a, b)
            elif (b, a) in est_dir:
                est = (b, a)
            elif (a, b) in est_und:
                est = "undirected"
            else:
                est = None
            if true_dir is not None:
                if est == true_dir:
                    a_tp += 1
                    o_tp += 1
                    o_tn += 1
                elif isinstance(est, tuple):
                    a_tp += 1
                    o_fp += 1
                    o_fn += 1
                elif est == "undirected":
                    a_tp += 1
                    o_fn += 1
                else:
                    a_fn += 1
                    o_fn += 1
            else:
                if isinstance(est, tuple):
                    a_fp += 1
                    o_fp += 1
                elif est == "undirected":
                    a_fp += 1
                else:
                    a_tn += 1
    return ConfusionCounts(
        adjacency=PairCounts(a_tp, a_fp, a_fn, a_tn),
        orientation=PairCounts(o_tp, o_fp, o_fn, o_tn),
    )


def _ratio(num: int, den: int) -> float:
    # An empty claim set makes no errors, so 0/0 counts as perfect.
    return num / den if den else 1.0


def precision_recall(c: ConfusionCounts) -> PrecisionRecall:
    """tp/(tp+fp) and tp/(tp+fn) for both count groups; 0/0 gives 1.0."""
    return PrecisionRecall(
        adjacency_precision=_ratio(c.adjacency.tp, c.adjacency.tp + c.adjacency.fp),
        adjacency_recall=_ratio(c.adjacency.tp, c.adjacency.tp + c.adjacency.fn),
        orientation_precision=_ratio(
            c.orientation.tp, c.orientation.tp + c.orientation.fp
        ),
        orientation_recall=_ratio(
            c.orientation.tp, c.orientation.tp + c.orientation.fn
        ),
    )


def population_r2(R: np.ndarray) -> np.ndarray:
    """Fraction of each variable's variance explained by all the others.

    For a correlation matrix R this is 1 - 1/(R^-1)_ii per variable. Raises
    SingularMatrixError when R is not invertible as a positive definite
    matrix.
    """
    R = np.asarray(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {R.shape}")
    try:
        L = np.linalg.cholesky(R)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("matrix is not positive definite") from exc
    # (R^-1)_ii from the Cholesky factor: column i of L^-1, squared and summed.
    Linv = linalg.solve_triangular(L, np.eye(R.shape[0]), lower=True)
    prec = np.einsum("ji,ji->i", Linv, Linv)
    return 1.0 - 1.0 / prec


def sample_r2(d: Dataset) -> np.ndarray:
    """population_r2 applied to the sample correlation matrix of ``d``.

    Requires more rows than columns; rank-deficient data (duplicate or
    constant columns, n <= p) raises RankDeficientDataError.
    """
    if d.n <= d.p:
        raise RankDeficientDataError(
            f"need more rows than columns, got n={d.n}, p={d.p}"
        )
    sd = d.values.std(axis=0, ddof=1)
    if np.any(sd == 0):
        raise RankDeficientDataError("a column has zero sample variance")
    Rhat = np.corrcoef(d.values, rowvar=False)
    try:
        return population_r2(Rhat)
    except SingularMatrixError as exc:
        raise RankDeficientDataError(
            "sample correlation matrix is singular"
        ) from exc


def sortability_rank_corr(
    scores, causal_index, *, largest_first: bool = False
) -> float:
    """Spearman rank correlation between scores and causal position.

    ``causal_index`` must be a permutation of 1..p giving each variable's
    position in the causal order. Ties in the scores receive average ranks.
    Scores that are strictly increasing along the causal order give +1; a
    constant score vector (including p = 1) returns 0.0 by convention.

    With ``largest_first=True`` the variables are ranked with the largest
    score first before correlating, which negates the plain statistic; this
    is the orientation used by the benchmark tables, where a negative value
    means the score grows along the causal order.
    """
    scores = np.asarray(scores, dtype=float)
    causal_index = np.asarray(causal_index, dtype=np.intp)
    p = len(scores)
    if causal_index.shape != (p,):
        raise ValueError(
            f"scores and causal_index lengths differ: {p} vs {causal_index.shape}"
        )
    if sorted(causal_index.tolist()) != list(range(1, p + 1)):
        raise ValueError("causal_index must be a permutation of 1..p")
    if p < 2 or np.all(scores == scores[0]):
        return 0.0
    ranks = stats.rankdata(scores)
    if largest_first:
        ranks = (p + 1) - ranks
    rho = stats.spearmanr(ranks, causal_index).statistic
    return float(rho) if np.isfinite(rho) else 0.0


def varsortability_scores(d: Dataset) -> np.ndarray:
    """Sample variance of each column (divisor n - 1); requires n >= 2."""
    if d.n < 2:
        raise ValueError(f"need at least two rows, got n={d.n}")
    return d.values.var(axis=0, ddof=1)
