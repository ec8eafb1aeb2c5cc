"""Disjoint-set forest for connected-component counting."""

import numpy as np


class DisjointSet:
    """Union-find over vertices 0..n-1 with union by rank and path compression."""

    def __init__(self, num_vertices: int):
        self.parents = np.arange(num_vertices)
        self.ranks = np.zeros(num_vertices, dtype=np.int64)
        self.num_components = num_vertices

    def find(self, index: int) -> int:
        """Root of the set containing ``index``."""
        parents = self.parents
        root = index
        while parents[root] != root:
            root = parents[root]
        while parents[index] != root:
            parents[index], index = root, parents[index]
        return int(root)

    def merge(self, a: int, b: int) -> bool:
        """Join the sets of ``a`` and ``b``; False if they were already joined."""
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return False

        ranks = self.ranks
        if ranks[a] < ranks[b]:
            a, b = b, a
        self.parents[b] = a
        if ranks[a] == ranks[b]:
            ranks[a] += 1
        self.num_components -= 1
        return True


def count_components(adjacency: np.ndarray) -> int:
    """Number of connected components of a boolean adjacency matrix."""
    n = adjacency.shape[0]
    forest = DisjointSet(n)
    rows, cols = np.nonzero(np.triu(adjacency, k=1))
    for u, v in zip(rows.tolist(), cols.tolist()):
        forest.merge(u, v)
    return forest.num_components
