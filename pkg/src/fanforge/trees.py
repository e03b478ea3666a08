"""Small unrooted trees used as decomposition skeletons.

Nodes are arbitrary hashables: decomposition leaves are element labels,
internal nodes are ints.  Everything here is desk scale; clarity over
speed.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable

from .errors import ValidationError

Node = Hashable


class Tree:
    __slots__ = ("nodes", "adj")

    def __init__(self, edges: Iterable[tuple[Node, Node]], nodes: Iterable[Node] = ()):
        adj: dict[Node, set[Node]] = {n: set() for n in nodes}
        for u, v in edges:
            if u == v:
                raise ValidationError("tree has a loop")
            adj.setdefault(u, set())
            adj.setdefault(v, set())
            if v in adj[u]:
                raise ValidationError("tree has a parallel edge")
            adj[u].add(v)
            adj[v].add(u)
        if not adj:
            raise ValidationError("tree has no nodes")
        self.nodes = tuple(sorted(adj, key=str))
        self.adj = {n: frozenset(nb) for n, nb in adj.items()}
        self._validate()

    def _validate(self) -> None:
        edge_count = sum(len(nb) for nb in self.adj.values()) // 2
        if edge_count != len(self.nodes) - 1:
            raise ValidationError("not a tree: wrong edge count")
        if len(self.component_of(self.nodes[0])) != len(self.nodes):
            raise ValidationError("not a tree: disconnected")

    def __repr__(self) -> str:
        return f"Tree({len(self.nodes)} nodes)"

    def degree(self, v: Node) -> int:
        return len(self.adj[v])

    def leaves(self) -> list[Node]:
        return [n for n in self.nodes if len(self.adj[n]) <= 1]

    def internal_nodes(self) -> list[Node]:
        return [n for n in self.nodes if len(self.adj[n]) >= 2]

    def edges(self) -> list[tuple[Node, Node]]:
        out = []
        for u in self.nodes:
            for v in self.adj[u]:
                if str(u) < str(v) or (str(u) == str(v) and id(u) < id(v)):
                    out.append((u, v))
        return out

    def component_of(self, start: Node, banned: frozenset[Node] = frozenset()) -> set[Node]:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen and y not in banned:
                    seen.add(y)
                    stack.append(y)
        return seen

    def components_without(self, v: Node) -> list[set[Node]]:
        return [self.component_of(u, banned=frozenset([v])) for u in sorted(self.adj[v], key=str)]

    def side_of_edge(self, u: Node, v: Node) -> set[Node]:
        """Nodes on u's side when edge uv is removed."""
        if v not in self.adj[u]:
            raise ValidationError("no such edge")
        return self.component_of(u, banned=frozenset([v]))

    def eccentricities(self) -> dict[Node, int]:
        out = {}
        for s in self.nodes:
            dist = {s: 0}
            frontier = [s]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for x in frontier:
                    for y in self.adj[x]:
                        if y not in dist:
                            dist[y] = d
                            nxt.append(y)
                frontier = nxt
            out[s] = max(dist.values())
        return out

    def radius(self) -> int:
        return min(self.eccentricities().values())

    def center(self) -> Node:
        ecc = self.eccentricities()
        best = min(ecc.values())
        return min((n for n in self.nodes if ecc[n] == best), key=str)
