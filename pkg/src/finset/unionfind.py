import numpy as np


class DisjointSet:
    """Union by rank with path compression over vertices 0..n-1."""

    def __init__(self, num_vertices: int):
        self.ranks = np.zeros(num_vertices, dtype=np.int64)
        self.parents = np.arange(num_vertices)

    def find(self, index: int) -> int:
        parents = self.parents
        root = index
        while root != parents[root]:
            root = parents[root]
        while parents[index] != root:
            parents[index], index = root, parents[index]
        return int(root)

    def merge(self, a: int, b: int) -> bool:
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return False

        ranks = self.ranks
        parents = self.parents
        if ranks[a] < ranks[b]:
            parents[a] = b
        elif ranks[a] > ranks[b]:
            parents[b] = a
        else:
            parents[b] = a
            ranks[a] += 1
        return True

    def get_components(self) -> np.ndarray:
        """Component id per vertex, numbered by first appearance."""
        ids = {}
        out = np.empty(len(self.parents), dtype=np.int64)
        for v in range(len(self.parents)):
            out[v] = ids.setdefault(self.find(v), len(ids))
        return out
