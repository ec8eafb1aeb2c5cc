"""Louvain community detection and Newman-Girvan modularity.

Modularity of a partition of a graph with m edges is

    Q = sum over communities c of [ e_c / m - (d_c / 2m)^2 ]

where e_c counts the edges inside c and d_c is the total degree of c (resolution 1).

Louvain alternates two phases until a local-move phase changes nothing:

1. Visit vertices in a seeded random order and move each one to the neighboring
   community with the largest modularity gain, if that beats staying by more than
   ``MIN_GAIN``. Equal gains go to the lowest community label.
2. Collapse every community into a single weighted vertex (internal edges become a
   self-loop) and repeat on the collapsed graph.

The gain of inserting an isolated vertex i into community C is
k_{i,C} / m - tot_C * k_i / (2 m^2), so Q is tracked incrementally; the running value
must match a direct recomputation at the end.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from src.models import CommunityStats, Partition
from src.network.build import Snapshot
from src.utils.errors import EmptyGraphError, InputValidationError, InternalConsistencyError
from src.utils.logger import get_logger

logger = get_logger()

MIN_GAIN = 1e-12
# Allowed gap between the incrementally tracked and the recomputed modularity.
BOOKKEEPING_TOL = 1e-9


@dataclass
class _LevelGraph:
    """Weighted graph of one Louvain level."""

    weights: sparse.csr_matrix  # symmetric, zero diagonal
    loops: np.ndarray  # self-loop weight per vertex, each loop counted once
    strength: np.ndarray  # weighted degree, loops counted twice

    @property
    def size(self) -> int:
        return self.loops.shape[0]


def _dense_labels(labels: np.ndarray) -> np.ndarray:
    """Relabel to 0..k-1 in order of first appearance."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse].astype(np.int64)


def modularity(snapshot: Snapshot, partition: Partition) -> float:
    """Newman-Girvan modularity of ``partition`` on ``snapshot``.

    Raises:
        EmptyGraphError: If the snapshot has no edges.
        InputValidationError: If the partition does not cover the snapshot's vertices.
    """
    if len(partition.assignment) != snapshot.n:
        raise InputValidationError(
            f"partition labels {len(partition.assignment)} vertices, snapshot has {snapshot.n}"
        )
    m = snapshot.edge_count
    if m == 0:
        raise EmptyGraphError("modularity is undefined on a snapshot without edges")

    labels = np.asarray(partition.assignment, dtype=np.int64)
    k = partition.k
    rows, cols = np.nonzero(np.triu(snapshot.adjacency, k=1))
    inside = labels[rows] == labels[cols]
    internal = np.bincount(labels[rows][inside], minlength=k).astype(float)
    totals = np.bincount(labels, weights=snapshot.degree_seq.astype(float), minlength=k)
    return float(np.sum(internal / m - (totals / (2.0 * m)) ** 2))


def community_stats(partition: Partition) -> CommunityStats:
    """Community count, largest size and ascending size distribution."""
    sizes = sorted(np.bincount(partition.assignment, minlength=partition.k).tolist())
    return CommunityStats(
        community_count=partition.k,
        largest_size=max(sizes, default=0),
        size_distribution=sizes,
    )


def _move_vertices(
    graph: _LevelGraph, m: float, rng: np.random.Generator
) -> tuple[np.ndarray, float, int]:
    """Local-move phase. Returns labels, total modularity gain and number of moves."""
    indptr, indices, data = graph.weights.indptr, graph.weights.indices, graph.weights.data
    strength = graph.strength
    labels = np.arange(graph.size)
    totals = strength.copy()
    two_m_sq = 2.0 * m * m
    gained = 0.0
    total_moves = 0

    while True:
        moves = 0
        for i in rng.permutation(graph.size):
            lo, hi = indptr[i], indptr[i + 1]
            if lo == hi:
                continue
            current = labels[i]
            k_i = strength[i]
            totals[current] -= k_i

            candidates, inverse = np.unique(labels[indices[lo:hi]], return_inverse=True)
            links = np.bincount(inverse, weights=data[lo:hi])
            gains = links / m - totals[candidates] * k_i / two_m_sq

            at_current = candidates == current
            if at_current.any():
                stay = float(gains[at_current][0])
            else:
                stay = -totals[current] * k_i / two_m_sq

            best = int(np.argmax(gains))
            target = int(candidates[best])
            improvement = float(gains[best]) - stay
            if target != current and improvement > MIN_GAIN:
                labels[i] = target
                totals[target] += k_i
                gained += improvement
                moves += 1
            else:
                totals[current] += k_i

        total_moves += moves
        if moves == 0:
            return labels, gained, total_moves


def _aggregate(graph: _LevelGraph, labels: np.ndarray) -> _LevelGraph:
    """Collapse each community into one vertex."""
    k = int(labels.max()) + 1
    membership = sparse.csr_matrix(
        (np.ones(graph.size), (np.arange(graph.size), labels)), shape=(graph.size, k)
    )
    collapsed = (membership.T @ graph.weights @ membership).tocsr()
    internal = collapsed.diagonal()
    loops = internal / 2.0 + np.bincount(labels, weights=graph.loops, minlength=k)
    collapsed = (collapsed - sparse.diags(internal)).tocsr()
    collapsed.eliminate_zeros()
    strength = np.bincount(labels, weights=graph.strength, minlength=k)
    return _LevelGraph(weights=collapsed, loops=loops, strength=strength)


def louvain(snapshot: Snapshot, seed: int = 42) -> tuple[Partition, CommunityStats]:
    """Louvain partition of ``snapshot``; the reported Q is recomputed from scratch.

    Raises:
        EmptyGraphError: If the snapshot has no edges.
        InternalConsistencyError: If the tracked and recomputed Q disagree.
    """
    m = float(snapshot.edge_count)
    if m == 0:
        raise EmptyGraphError("Louvain needs a snapshot with at least one edge")

    rng = np.random.default_rng(seed)
    degrees = snapshot.degree_seq.astype(float)
    graph = _LevelGraph(
        weights=snapshot.sparse_adjacency,
        loops=np.zeros(snapshot.n),
        strength=degrees,
    )
    membership = np.arange(snapshot.n)
    tracked = -float(np.sum((degrees / (2.0 * m)) ** 2))
    level = 0

    while True:
        labels, gained, moves = _move_vertices(graph, m, rng)
        if moves == 0:
            break
        tracked += gained
        labels = _dense_labels(labels)
        membership = labels[membership]
        graph = _aggregate(graph, labels)
        level += 1
        logger.debug(f"louvain level {level}: {graph.size} communities, Q~{tracked:.6f}")

    partition = Partition(assignment=_dense_labels(membership).tolist())
    q = modularity(snapshot, partition)
    if abs(q - tracked) > BOOKKEEPING_TOL:
        raise InternalConsistencyError(
            f"Louvain bookkeeping Q={tracked:.12f} differs from recomputed Q={q:.12f}"
        )

    stats = community_stats(partition).model_copy(update={"modularity": q})
    return partition, stats


def louvain_best_of(
    snapshot: Snapshot, seed: int = 42, restarts: int = 1
) -> tuple[Partition, CommunityStats]:
    """Best-Q Louvain result over seeds seed, seed+1, ...; the earliest seed wins ties."""
    if restarts < 1:
        raise InputValidationError(f"restarts must be at least 1, got {restarts}")

    best_partition, best_stats = louvain(snapshot, seed)
    for offset in range(1, restarts):
        partition, stats = louvain(snapshot, seed + offset)
        if stats.modularity > best_stats.modularity:
            best_partition, best_stats = partition, stats
        elif stats.modularity == best_stats.modularity and partition != best_partition:
            logger.debug(f"louvain seed {seed + offset} ties Q={stats.modularity:.9g}; kept")
    return best_partition, best_stats
