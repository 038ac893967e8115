"""Shared helpers for the test suite: exhaustive enumeration and oracles."""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from dagonion import CyclicGraphError, Dag, Pdag


def all_pairs(p: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, p + 1), 2))


def enumerate_dags(p: int) -> list[Dag]:
    """Every labeled DAG on p vertices (feasible for p <= 4)."""
    pairs = all_pairs(p)
    dags = []
    for states in product((0, 1, 2), repeat=len(pairs)):
        edges = set()
        for (a, b), s in zip(pairs, states):
            if s == 1:
                edges.add((a, b))
            elif s == 2:
                edges.add((b, a))
        try:
            dags.append(Dag(p, frozenset(edges)))
        except CyclicGraphError:
            continue
    return dags


def enumerate_pdags(p: int) -> list[Pdag]:
    """Every labeled partially directed graph on p vertices (p <= 3)."""
    pairs = all_pairs(p)
    out = []
    for states in product((0, 1, 2, 3), repeat=len(pairs)):
        directed = set()
        undirected = set()
        for (a, b), s in zip(pairs, states):
            if s == 1:
                directed.add((a, b))
            elif s == 2:
                directed.add((b, a))
            elif s == 3:
                undirected.add((a, b))
        out.append(Pdag(p, frozenset(directed), frozenset(undirected)))
    return out


def brute_pair_counts(truth: Dag, est: Pdag):
    """Independent per-pair classifier used as an oracle for compare_graphs."""
    adj = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
    ori = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
    for a, b in all_pairs(truth.p):
        t_ab, t_ba = (a, b) in truth.edges, (b, a) in truth.edges
        e_ab, e_ba = (a, b) in est.directed, (b, a) in est.directed
        e_un = (a, b) in est.undirected
        true_edge = t_ab or t_ba
        est_dir = e_ab or e_ba
        if true_edge and est_dir:
            adj["tp"] += 1
            if t_ab == e_ab:
                ori["tp"] += 1
                ori["tn"] += 1
            else:
                ori["fp"] += 1
                ori["fn"] += 1
        elif true_edge and e_un:
            adj["tp"] += 1
            ori["fn"] += 1
        elif true_edge:
            adj["fn"] += 1
            ori["fn"] += 1
        elif est_dir:
            adj["fp"] += 1
            ori["fp"] += 1
        elif e_un:
            adj["fp"] += 1
        else:
            adj["tn"] += 1
    return adj, ori


def partial_corr(R: np.ndarray, i0: int, j0: int, given0: list[int]) -> float:
    """Partial correlation of variables i0 and j0 given a conditioning set."""
    idx = [i0, j0] + list(given0)
    P = np.linalg.inv(R[np.ix_(idx, idx)])
    return float(-P[0, 1] / np.sqrt(P[0, 0] * P[1, 1]))


def is_consistent(order: tuple[int, ...], g: Dag) -> bool:
    pos = {v: k for k, v in enumerate(order)}
    return all(pos[a] < pos[b] for a, b in g.edges)


def is_source_first(order: tuple[int, ...], g: Dag) -> bool:
    has_parent = {b for _, b in g.edges}
    seen_nonsource = False
    for v in order:
        if v in has_parent:
            seen_nonsource = True
        elif seen_nonsource:
            return False
    return True
