"""Device connectivity graphs used for routing."""

import json
from collections import deque
from typing import Iterable

from ..errors import CouplingError


class CouplingMap:
    """Undirected connectivity over `num_qubits` physical qubits.

    Immutable by convention; adjacency and all-pairs shortest distances are
    precomputed (maps are small: tens of qubits).
    """

    def __init__(self, num_qubits: int, edges: Iterable[tuple[int, int]], tag: str = "custom"):
        if num_qubits < 1:
            raise CouplingError("coupling map needs at least one qubit")
        norm = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise CouplingError(f"self-loop on qubit {a}")
            if not (0 <= a < num_qubits and 0 <= b < num_qubits):
                raise CouplingError(f"edge ({a},{b}) outside 0..{num_qubits - 1}")
            norm.add((min(a, b), max(a, b)))
        self.num_qubits = num_qubits
        self.edges = frozenset(norm)
        self.tag = tag
        self._adj: tuple[tuple[int, ...], ...] = self._adjacency()
        if num_qubits > 1:
            self._check_connected()
        self._dist = self._all_pairs_distances()

    def _adjacency(self):
        adj = [[] for _ in range(self.num_qubits)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    def _check_connected(self):
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self._adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        if len(seen) != self.num_qubits:
            raise CouplingError("coupling map is not connected")

    def _all_pairs_distances(self):
        n = self.num_qubits
        dist = [[0] * n for _ in range(n)]
        for src in range(n):
            d = [-1] * n
            d[src] = 0
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if d[v] < 0:
                        d[v] = d[u] + 1
                        queue.append(v)
            dist[src] = d
        return tuple(tuple(row) for row in dist)

    def neighbors(self, q: int) -> tuple[int, ...]:
        return self._adj[q]

    def distance(self, a: int, b: int) -> int:
        return self._dist[a][b]

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def shortest_path(self, src: int, dst: int) -> list[int]:
        """One BFS shortest path; ties broken by ascending neighbor index."""
        if src == dst:
            return [src]
        parent = {src: src}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in self._adj[u]:
                if v not in parent:
                    parent[v] = u
                    if v == dst:
                        path = [dst]
                        while path[-1] != src:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(v)
        raise CouplingError(f"no path between {src} and {dst}")  # pragma: no cover

    def __repr__(self):
        return f"CouplingMap({self.tag}, n={self.num_qubits}, edges={len(self.edges)})"

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.num_qubits, "edges": sorted(list(e) for e in self.edges), "tag": self.tag}
        )

    @classmethod
    def from_json(cls, text: str) -> "CouplingMap":
        spec = json.loads(text)
        return cls(int(spec["n"]), [tuple(e) for e in spec["edges"]], spec.get("tag", "custom"))


def line_map(n: int) -> CouplingMap:
    return CouplingMap(n, [(i, i + 1) for i in range(n - 1)], tag="line")


def ring_map(n: int) -> CouplingMap:
    if n < 3:
        raise CouplingError("ring needs at least 3 qubits")
    return CouplingMap(n, [(i, (i + 1) % n) for i in range(n)], tag="ring")


def all_to_all_map(n: int) -> CouplingMap:
    return CouplingMap(n, [(i, j) for i in range(n) for j in range(i + 1, n)], tag="all-to-all")


def heavy_hex_like_map(n: int) -> CouplingMap:
    """Sparse degree-<=3 graph approximating heavy-hex device connectivity:
    a backbone path with a rung every eight qubits."""
    edges = [(i, i + 1) for i in range(n - 1)]
    for i in range(1, n - 4, 8):
        edges.append((i, i + 4))
    return CouplingMap(n, edges, tag="heavy-hex-like")


_NAMED = {
    "line": line_map,
    "ring": ring_map,
    "all-to-all": all_to_all_map,
    "heavy-hex-like": heavy_hex_like_map,
}


def named_map(kind: str, n: int) -> CouplingMap:
    try:
        builder = _NAMED[kind]
    except KeyError:
        raise CouplingError(f"unknown coupling map kind {kind!r}; options: {sorted(_NAMED)}")
    return builder(n)
