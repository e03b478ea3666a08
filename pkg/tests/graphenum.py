"""Exhaustive enumeration of connected multigraphs up to isomorphism.

Graphs are canonicalized by a greedy lexicographic-maximal adjacency
encoding with tie branching (the ties are exactly the automorphism
choices, so the search stays tiny at this scale), and generated level by
level by single-edge extensions.
"""

from __future__ import annotations

import itertools

from fanforge.graphs import MultiGraph


def canonical_form(nv: int, edges: tuple[tuple[int, int], ...]) -> tuple:
    """Canonical encoding of a multigraph: the lexicographically maximal
    sequence of per-vertex rows (refined colour, counts towards the
    already-placed prefix) over all vertex orderings."""
    loops = [0] * nv
    count = [[0] * nv for _ in range(nv)]
    deg = [0] * nv
    for u, v in edges:
        if u == v:
            loops[u] += 1
            deg[u] += 2
        else:
            count[u][v] += 1
            count[v][u] += 1
            deg[u] += 1
            deg[v] += 1

    # iterated colour refinement; colours are canonically comparable tuples
    colour: list = [(loops[v], deg[v]) for v in range(nv)]
    for _ in range(nv):
        nxt = [
            (
                colour[v],
                tuple(sorted((count[v][u], colour[u]) for u in range(nv) if count[v][u])),
            )
            for v in range(nv)
        ]
        ranks = {c: i for i, c in enumerate(sorted(set(nxt)))}
        nxt_ranked = [(len(ranks) - ranks[c],) for c in nxt]
        if len(set(nxt_ranked)) == len(set(colour)):
            break
        colour = [colour[v] + nxt_ranked[v] for v in range(nv)]

    best: list[tuple] | None = None

    def search(placed: list[int], rows: list[tuple]) -> None:
        nonlocal best
        if best is not None and rows < best[: len(rows)]:
            return
        if len(placed) == nv:
            if best is None or rows > best:
                best = rows[:]
            return
        candidates = [v for v in range(nv) if v not in placed]
        scored = [
            (tuple(colour[v]) + tuple(count[v][p] for p in placed), v)
            for v in candidates
        ]
        top = max(s for s, _ in scored)
        for s, v in scored:
            if s == top:
                placed.append(v)
                rows.append(s)
                search(placed, rows)
                rows.pop()
                placed.pop()

    search([], [])
    assert best is not None
    return (nv, tuple(best))


def _normalize(nv: int, edges) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Drop isolated vertices and renumber."""
    used = sorted({x for e in edges for x in e})
    remap = {v: i for i, v in enumerate(used)}
    out = tuple(sorted((min(remap[u], remap[v]), max(remap[u], remap[v])) for u, v in edges))
    return len(used), out


def _is_connected(nv: int, edges) -> bool:
    if nv == 0:
        return False
    adj = {i: set() for i in range(nv)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == nv


def _has_long_cycle(nv: int, edges) -> bool:
    """A cycle of length at least 2: parallel pair or genuine cycle among
    the non-loop edges."""
    nonloop = [(u, v) for u, v in edges if u != v]
    if not nonloop:
        return False
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = 0
    for u, v in nonloop:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            forest += 1
    return len(nonloop) > forest


def connected_multigraphs(max_edges: int):
    """All connected multigraphs (loops and parallels allowed, no isolated
    vertices) with 1..max_edges edges, one representative per isomorphism
    class, as (edge_count, nv, edges) tuples."""
    level = {}
    for seed in (((0, 0),), ((0, 1),)):
        nv, edges = _normalize(2, seed)
        level[canonical_form(nv, edges)] = (nv, edges)
    out_by_level = {1: dict(level)}
    for m in range(2, max_edges + 1):
        nxt: dict[tuple, tuple[int, tuple]] = {}
        for nv, edges in out_by_level[m - 1].values():
            additions = [(u, v) for u in range(nv) for v in range(u, nv)]
            additions += [(u, nv) for u in range(nv)]
            additions += [(nv, nv), (nv, nv + 1)]
            for extra in additions:
                new_nv, new_edges = _normalize(max(nv, extra[0] + 1, extra[1] + 1), edges + (extra,))
                key = canonical_form(new_nv, new_edges)
                if key not in nxt:
                    nxt[key] = (new_nv, new_edges)
        out_by_level[m] = nxt
    for m in range(1, max_edges + 1):
        for nv, edges in sorted(out_by_level[m].values()):
            if _is_connected(nv, edges):
                yield m, nv, edges


def as_multigraph(nv: int, edges) -> MultiGraph:
    return MultiGraph(range(nv), [(u, v, f"e{i}") for i, (u, v) in enumerate(edges)])


def cyclic_connected_multigraphs(min_edges: int, max_edges: int):
    """Connected multigraphs with a cycle of length at least 2."""
    for m, nv, edges in connected_multigraphs(max_edges):
        if min_edges <= m and _has_long_cycle(nv, edges):
            yield m, nv, edges
