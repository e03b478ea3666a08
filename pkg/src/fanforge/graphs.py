"""Multigraphs with labelled edges.

Loops and parallel edges are allowed everywhere; the edge labels double
as matroid element labels for the graphic and quasi-graphic backends.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable

from .errors import DomainError

Vertex = Hashable


class MultiGraph:
    """An undirected multigraph with distinctly labelled edges."""

    __slots__ = ("vertices", "edges", "labels", "_by_label")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex, str]]):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise DomainError("duplicate vertices")
        edges = tuple((u, v, str(lab)) for u, v, lab in edges)
        for u, v, _ in edges:
            if u not in vset or v not in vset:
                raise DomainError(f"edge endpoint outside vertex set: {(u, v)}")
        labels = tuple(lab for _, _, lab in edges)
        if len(set(labels)) != len(labels):
            raise DomainError("duplicate edge labels")
        self.edges = edges
        self.labels = labels
        self._by_label = {lab: (u, v) for u, v, lab in edges}

    def __repr__(self) -> str:
        return f"MultiGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def endpoints(self, label: str) -> tuple[Vertex, Vertex]:
        try:
            return self._by_label[label]
        except KeyError:
            raise DomainError(f"no edge labelled {label!r}") from None

    def incident_vertices(self, labels: Iterable[str]) -> set[Vertex]:
        out: set[Vertex] = set()
        for lab in labels:
            u, v = self.endpoints(lab)
            out.add(u)
            out.add(v)
        return out

    def edge_components(self, labels: Iterable[str]) -> list[set[str]]:
        """Connected components of the subgraph spanned by the given edges,
        returned as sets of edge labels."""
        labels = list(labels)
        parent: dict[Vertex, Vertex] = {}

        def find(x: Vertex) -> Vertex:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for lab in labels:
            u, v = self.endpoints(lab)
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[Vertex, set[str]] = {}
        for lab in labels:
            root = find(self.endpoints(lab)[0])
            groups.setdefault(root, set()).add(lab)
        return list(groups.values())

    def spanning_forest_rank(self, labels: Iterable[str]) -> int:
        """Number of edges in a spanning forest of the subgraph (cycle-matroid rank)."""
        labels = list(labels)
        touched = self.incident_vertices(labels)
        return len(touched) - len(self.edge_components(labels)) if labels else 0

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        comps = self.edge_components(self.labels)
        if len(comps) != 1:
            return False
        return self.incident_vertices(self.labels) == set(self.vertices)

    def boundary_size(self, labels: Iterable[str]) -> int:
        """Vertices incident with edges both inside and outside the given set."""
        inside = set(labels)
        outside = [lab for lab in self.labels if lab not in inside]
        return len(self.incident_vertices(inside) & self.incident_vertices(outside))


def cycles_of(graph: MultiGraph) -> list[frozenset[str]]:
    """Every cycle of the graph as a set of edge labels.

    A cycle is a non-empty edge set whose subgraph is connected and
    2-regular, where a loop contributes 2 to the degree of its vertex.
    Loops and parallel pairs therefore count as cycles of length 1 and 2.
    """
    m = len(graph.labels)
    cycles: list[frozenset[str]] = []
    for r in range(1, m + 1):
        for combo in itertools.combinations(graph.labels, r):
            if _is_cycle(graph, combo):
                cycles.append(frozenset(combo))
    return cycles


def _is_cycle(graph: MultiGraph, labels: tuple[str, ...]) -> bool:
    deg: dict[Vertex, int] = {}
    for lab in labels:
        u, v = graph.endpoints(lab)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return len(graph.edge_components(labels)) == 1


def is_theta(graph: MultiGraph, labels: Iterable[str]) -> bool:
    """Whether the edge set forms three internally disjoint paths between
    two distinct vertices.

    Characterization used: connected, exactly two vertices of degree 3,
    all other incident vertices of degree 2, and no bridge.  The bridge
    condition separates thetas from dumbbells, which share the degree
    sequence.
    """
    labels = list(labels)
    deg: dict[Vertex, int] = {}
    for lab in labels:
        u, v = graph.endpoints(lab)
        if u == v:
            return False
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    three = [v for v, d in deg.items() if d == 3]
    if len(three) != 2 or any(d not in (2, 3) for d in deg.values()):
        return False
    if len(graph.edge_components(labels)) != 1:
        return False
    lset = set(labels)
    for lab in labels:
        rest = lset - {lab}
        if rest and len(graph.edge_components(rest)) != 1:
            return False  # bridge found
    return True


def fan_graph(n: int) -> MultiGraph:
    """The fan on n+1 vertices: hub 0 joined to path 1-2-...-n.

    Spokes are labelled s1..sn and path edges p1..p(n-1); the cycle
    matroid of this graph has 2n-1 elements and rank n.
    """
    if n < 1:
        raise DomainError("fan index must be positive")
    vertices = list(range(n + 1))
    edges = [(0, i, f"s{i}") for i in range(1, n + 1)]
    edges += [(i, i + 1, f"p{i}") for i in range(1, n)]
    return MultiGraph(vertices, edges)


def looped_path_graph(n: int) -> MultiGraph:
    """Path on n vertices with one loop per vertex.

    Loops are labelled o1..on and path edges q1..q(n-1).
    """
    if n < 1:
        raise DomainError("path length must be positive")
    vertices = list(range(1, n + 1))
    edges = [(i, i, f"o{i}") for i in range(1, n + 1)]
    edges += [(i, i + 1, f"q{i}") for i in range(1, n)]
    return MultiGraph(vertices, edges)


def triangle_graph() -> MultiGraph:
    return MultiGraph([0, 1, 2], [(0, 1, "a"), (1, 2, "b"), (2, 0, "c")])
