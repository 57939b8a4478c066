"""Array-based disjoint-set forest with a minimal-element canonical map."""

from __future__ import annotations

import numpy as np


class UnionFind:
    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root so canonical reps are minima
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def union_arrays(self, a, b):
        for x, y in zip(np.asarray(a).ravel(), np.asarray(b).ravel()):
            self.union(int(x), int(y))

    def canonical_map(self) -> np.ndarray:
        """Array mapping each element to the minimal element of its set."""
        n = len(self.parent)
        roots = np.array([self.find(i) for i in range(n)], dtype=np.int64)
        # roots are minima by the union rule
        return roots
