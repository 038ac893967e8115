"""Random DAG generation, rewiring, and vertex orderings.

Vertices are labeled 1..p. An edge is an ordered pair ``(parent, child)``.
The samplers in this module return graphs whose edges all point from a
smaller label to a larger one, so the identity order 1, 2, ..., p is a
consistent (topological) order for freshly sampled graphs. Rewiring
preserves that property; label shuffling deliberately breaks it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import CyclicGraphError

__all__ = [
    "Dag",
    "er_dag",
    "sfi_rewire",
    "sfo_rewire",
    "shuffle_labels",
    "source_first_order",
]


@dataclass(frozen=True)
class Dag:
    """A directed acyclic graph on vertices 1..p.

    ``edges`` holds ``(parent, child)`` pairs. Construction validates label
    range, self-loops, and acyclicity; a cyclic edge set raises
    :class:`~dagonion.errors.CyclicGraphError`.
    """

    p: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"vertex count must be positive, got {self.p}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for a, b in self.edges:
            if not (1 <= a <= self.p and 1 <= b <= self.p):
                raise ValueError(f"edge ({a}, {b}) outside vertex range 1..{self.p}")
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
        # Acyclicity check; raises CyclicGraphError on failure.
        source_first_order(self)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def parents(self, v: int) -> tuple[int, ...]:
        """Parents of ``v`` in ascending label order."""
        return tuple(sorted(a for a, b in self.edges if b == v))

    def children(self, v: int) -> tuple[int, ...]:
        """Children of ``v`` in ascending label order."""
        return tuple(sorted(b for a, b in self.edges if a == v))

    def parent_map(self) -> dict[int, list[int]]:
        """Sorted parent lists for every vertex (one pass over the edges)."""
        pa: dict[int, list[int]] = {v: [] for v in range(1, self.p + 1)}
        for a, b in self.edges:
            pa[b].append(a)
        for v in pa:
            pa[v].sort()
        return pa

    def child_map(self) -> dict[int, list[int]]:
        """Sorted child lists for every vertex."""
        ch: dict[int, list[int]] = {v: [] for v in range(1, self.p + 1)}
        for a, b in self.edges:
            ch[a].append(b)
        for v in ch:
            ch[v].sort()
        return ch

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order, the canonical serialization order."""
        return sorted(self.edges)


def er_dag(p: int, avg_degree: float, rng: np.random.Generator) -> Dag:
    """Sample an Erdos-Renyi style DAG with a fixed number of edges.

    Draws m = round(avg_degree * p / 2) edges uniformly at random among the
    p(p-1)/2 pairs (a, b) with a < b, so every edge respects the label order
    and the result is acyclic by construction. Rounding of a half-integer
    edge count follows Python's round (ties to even).

    Raises ValueError when avg_degree is negative or exceeds p - 1.
    """
    if not 0 <= avg_degree <= p - 1:
        raise ValueError(
            f"average degree must lie in [0, p-1] = [0, {p - 1}], got {avg_degree}"
        )
    m = round(avg_degree * p / 2)
    n_pairs = p * (p - 1) // 2
    if m > n_pairs:
        raise ValueError(f"target edge count {m} exceeds maximum {n_pairs}")
    if m == 0:
        return Dag(p, frozenset())
    rows, cols = np.triu_indices(p, k=1)
    chosen = rng.choice(n_pairs, size=m, replace=False)
    edges = frozenset(
        (int(rows[k]) + 1, int(cols[k]) + 1) for k in np.asarray(chosen)
    )
    return Dag(p, edges)


def _weighted_pick(eligible: list[int], weight_of: np.ndarray, rng: np.random.Generator) -> int:
    """Pick one label from ``eligible`` with probability proportional to its weight."""
    w = weight_of[np.array(eligible, dtype=np.intp) - 1]
    cum = np.cumsum(w)
    return eligible[int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))]


def sfi_rewire(g: Dag, rng: np.random.Generator) -> Dag:
    """Rewire toward a scale-free in-degree distribution.

    Processes vertices in reverse label order. Each vertex keeps its
    out-degree but its children are resampled among the successors j > i,
    with selection weight 1 + (in-degree of j accumulated so far). Sampling
    is without replacement among the not-yet-chosen candidates, with weights
    renormalized after every pick, so the loop always terminates.

    Requires an input whose edges all satisfy parent < child.
    """
    _require_label_consistent(g, "sfi_rewire")
    out_deg = {v: len(cs) for v, cs in g.child_map().items()}
    in_deg = np.zeros(g.p)  # in-degree of each vertex in the rewired graph
    edges: list[tuple[int, int]] = []
    for i in range(g.p, 0, -1):
        need = out_deg[i]
        if need == 0:
            continue
        eligible = list(range(i + 1, g.p + 1))
        for _ in range(need):
            j = _weighted_pick(eligible, 1.0 + in_deg, rng)
            eligible.remove(j)
            edges.append((i, j))
            in_deg[j - 1] += 1.0
    return Dag(g.p, frozenset(edges))


def sfo_rewire(g: Dag, rng: np.random.Generator) -> Dag:
    """Rewire toward a scale-free out-degree distribution.

    Mirror image of :func:`sfi_rewire`: vertices are processed in forward
    label order, each keeps its in-degree, and its parents are resampled
    among the predecessors j < i with weight 1 + (out-degree of j
    accumulated so far).
    """
    _require_label_consistent(g, "sfo_rewire")
    in_deg_in = {v: len(ps) for v, ps in g.parent_map().items()}
    out_deg = np.zeros(g.p)
    edges: list[tuple[int, int]] = []
    for i in range(1, g.p + 1):
        need = in_deg_in[i]
        if need == 0:
            continue
        eligible = list(range(1, i))
        for _ in range(need):
            j = _weighted_pick(eligible, 1.0 + out_deg, rng)
            eligible.remove(j)
            edges.append((j, i))
            out_deg[j - 1] += 1.0
    return Dag(g.p, frozenset(edges))


def _require_label_consistent(g: Dag, op: str) -> None:
    bad = [(a, b) for a, b in g.edges if a >= b]
    if bad:
        raise ValueError(
            f"{op} requires every edge to point from a smaller to a larger label; "
            f"offending edge {bad[0]}"
        )


def shuffle_labels(
    g: Dag, rng: np.random.Generator
) -> tuple[Dag, tuple[int, ...]]:
    """Relabel the vertices by a uniformly random permutation.

    Returns the relabeled graph and the permutation as a tuple ``perm``
    where ``perm[v-1]`` is the new label of old vertex ``v``.
    """
    raw = rng.permutation(g.p)
    perm = tuple(int(x) + 1 for x in raw)
    edges = frozenset((perm[a - 1], perm[b - 1]) for a, b in g.edges)
    return Dag(g.p, edges), perm


def source_first_order(g: Dag) -> tuple[int, ...]:
    """Deterministic source-first consistent order of ``g``.

    All parentless vertices come first (ascending label), then the remaining
    vertices in topological order with ties broken by ascending label. Every
    parent precedes its children. Raises CyclicGraphError if the edge set
    has a directed cycle (unreachable for a validated Dag, kept as a guard).
    """
    p = g.p
    indeg = [0] * (p + 1)
    children: list[list[int]] = [[] for _ in range(p + 1)]
    for a, b in g.edges:
        indeg[b] += 1
        children[a].append(b)
    sources = [v for v in range(1, p + 1) if indeg[v] == 0]
    order = list(sources)
    heap: list[int] = []
    for v in sources:
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    if len(order) != p:
        raise CyclicGraphError("edge set contains a directed cycle")
    return tuple(order)
