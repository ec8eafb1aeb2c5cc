"""Small graphs and oracles shared by the network tests."""

import itertools

import networkx as nx
import numpy as np

from src.network.build import Snapshot, snapshot_from_edges


def complete(n: int) -> Snapshot:
    return snapshot_from_edges(n, list(itertools.combinations(range(n), 2)))


def star(leaves: int) -> Snapshot:
    return snapshot_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n: int) -> Snapshot:
    return snapshot_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Snapshot:
    return snapshot_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def k4_minus_edge() -> Snapshot:
    """K4 without the edge (0, 1)."""
    return snapshot_from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def bridged_triangles() -> Snapshot:
    """Triangles {0, 1, 2} and {3, 4, 5} joined by the edge (2, 3)."""
    return snapshot_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def disjoint_triangles() -> Snapshot:
    return snapshot_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def bridged_cliques() -> Snapshot:
    """Two K4 cliques {0..3} and {4..7} joined by the edge (3, 4)."""
    edges = list(itertools.combinations(range(4), 2))
    edges += list(itertools.combinations(range(4, 8), 2))
    edges.append((3, 4))
    return snapshot_from_edges(8, edges)


def random_graph(n: int, p: float, seed: int) -> Snapshot:
    """Erdos-Renyi graph from a seeded generator."""
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return snapshot_from_edges(n, edges)


def random_graphs(count: int = 100, max_n: int = 30, seed: int = 2020) -> list[Snapshot]:
    rng = np.random.default_rng(seed)
    graphs = []
    for k in range(count):
        n = int(rng.integers(2, max_n + 1))
        p = float(rng.uniform(0.05, 0.6))
        graphs.append(random_graph(n, p, seed + k))
    return graphs


def to_networkx(snapshot: Snapshot) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(snapshot.n))
    rows, cols = np.nonzero(np.triu(snapshot.adjacency, k=1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def set_partitions(items: list[int]):
    """Every partition of ``items`` as a list of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1 :]
        yield [[first]] + partition
