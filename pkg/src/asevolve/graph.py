"""Compact undirected simple graph tuned for evolving-model workloads.

Dense integer node ids double as creation order, adjacency sets give O(1)
membership tests, and an edge array supports O(1) uniform edge sampling,
which is what degree-proportional attachment needs.
"""

from __future__ import annotations

import random

from .errors import InvalidNodeError, InvalidParameterError, NoIncidentEdgeError

__all__ = ["Graph", "complete_graph"]


class Graph:
    """Undirected simple graph over node ids 0..n-1.

    Maintains degree_sum == 2 * edge_count through every mutation, a
    degree -> node-count histogram for cheap degree queries, and a compact
    edge array with swap-removal so uniform edge draws stay O(1).
    No self-loops, no parallel edges.
    """

    __slots__ = ("adj", "degree_sum", "degree_counts", "_edges", "_edge_pos")

    def __init__(self) -> None:
        self.adj: list[set[int]] = []
        self.degree_sum: int = 0
        self.degree_counts: dict[int, int] = {}
        self._edges: list[tuple[int, int]] = []
        self._edge_pos: dict[tuple[int, int], int] = {}

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def degree(self, i: int) -> int:
        self._check(i)
        return len(self.adj[i])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adj]

    def has_edge(self, i: int, j: int) -> bool:
        self._check(i)
        self._check(j)
        return j in self.adj[i]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (i, j) with i < j, in internal (arbitrary) order."""
        return list(self._edges)

    def add_node(self) -> int:
        """Append an isolated node and return its id (= previous n)."""
        self.adj.append(set())
        self.degree_counts[0] = self.degree_counts.get(0, 0) + 1
        return len(self.adj) - 1

    def add_edge(self, i: int, j: int) -> bool:
        """Insert edge {i, j}; False (no mutation) on self-loop or duplicate."""
        self._check(i)
        self._check(j)
        if i == j or j in self.adj[i]:
            return False
        self.adj[i].add(j)
        self.adj[j].add(i)
        self._shift_degree_count(len(self.adj[i]), +1)
        self._shift_degree_count(len(self.adj[j]), +1)
        self.degree_sum += 2
        key = (i, j) if i < j else (j, i)
        self._edge_pos[key] = len(self._edges)
        self._edges.append(key)
        return True

    def remove_edge(self, i: int, j: int) -> bool:
        """Delete edge {i, j}; False if the edge is not present."""
        self._check(i)
        self._check(j)
        if i == j or j not in self.adj[i]:
            return False
        self.adj[i].discard(j)
        self.adj[j].discard(i)
        self._shift_degree_count(len(self.adj[i]), -1)
        self._shift_degree_count(len(self.adj[j]), -1)
        self.degree_sum -= 2
        key = (i, j) if i < j else (j, i)
        idx = self._edge_pos.pop(key)
        last = self._edges.pop()
        if idx < len(self._edges):
            self._edges[idx] = last
            self._edge_pos[last] = idx
        return True

    def random_edge(self, rng: random.Random) -> tuple[int, int]:
        """Uniformly random edge; requires edge_count >= 1."""
        return self._edges[rng.randrange(len(self._edges))]

    def random_incident_edge(self, i: int, rng: random.Random) -> int:
        """Uniformly random neighbor of i (the far end of a uniform incident edge)."""
        self._check(i)
        nbrs = self.adj[i]
        if not nbrs:
            raise NoIncidentEdgeError(f"node {i} has no incident edge")
        return tuple(nbrs)[rng.randrange(len(nbrs))]

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = [set(nbrs) for nbrs in self.adj]
        g.degree_sum = self.degree_sum
        g.degree_counts = dict(self.degree_counts)
        g._edges = list(self._edges)
        g._edge_pos = dict(self._edge_pos)
        return g

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self.adj):
            raise InvalidNodeError(f"node id {i} out of range for n={len(self.adj)}")

    def _shift_degree_count(self, new_degree: int, direction: int) -> None:
        # one node moved from new_degree - direction to new_degree
        old_degree = new_degree - direction
        cnt = self.degree_counts
        cnt[old_degree] -= 1
        if cnt[old_degree] == 0:
            del cnt[old_degree]
        cnt[new_degree] = cnt.get(new_degree, 0) + 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def complete_graph(m0: int) -> Graph:
    """Fully connected graph on m0 >= 2 nodes: m0(m0-1)/2 edges, all degrees m0-1."""
    if m0 < 2:
        raise InvalidParameterError(f"complete graph needs at least 2 nodes, got {m0}")
    g = Graph()
    for _ in range(m0):
        g.add_node()
    for i in range(m0):
        for j in range(i + 1, m0):
            g.add_edge(i, j)
    return g
