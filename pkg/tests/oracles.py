"""Brute-force oracles for the test suite.

These deliberately re-derive values straight from the definitions, with
no pruning and no code shared with the library's search implementations:
decomposition trees are enumerated wholesale, node widths evaluate every
sub-collection of the full induced partition (parent side included), and
fan minors are found by minor-and-isomorphism enumeration.
"""

from __future__ import annotations

import itertools

from fanforge.matroids import Matroid, fan_matroid, is_isomorphic


# ---------------------------------------------------------------------------
# tree enumeration


def prufer_trees(node_ids: list):
    """All labelled trees on the given nodes via Prufer decoding."""
    t = len(node_ids)
    if t == 1:
        yield []
        return
    if t == 2:
        yield [(node_ids[0], node_ids[1])]
        return
    for seq in itertools.product(range(t), repeat=t - 2):
        avail = [1] * t
        for x in seq:
            avail[x] += 1
        used = [False] * t
        edges = []
        for x in seq:
            cand = next(i for i in range(t) if avail[i] == 1 and not used[i])
            edges.append((node_ids[cand], node_ids[x]))
            used[cand] = True
            avail[x] -= 1
        last = [i for i in range(t) if not used[i]]
        edges.append((node_ids[last[0]], node_ids[last[1]]))
        yield edges


def _adjacency(edges):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _components_without(adj, v):
    seen = {v}
    out = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and y != v:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(comp)
    return out


def _radius(adj):
    best = None
    for s in adj:
        dist = {s: 0}
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = d
                        nxt.append(y)
            frontier = nxt
        ecc = max(dist.values())
        best = ecc if best is None else min(best, ecc)
    return best


def branch_depth_oracle(m: Matroid) -> int:
    """Minimum k over all decompositions with width <= k and radius <= k,
    by literal enumeration of trees with up to n-1 internal nodes.

    Suppressing a degree-2 internal node never increases width or radius,
    so trees with all internal degrees >= 3 (hence <= n-2 internal nodes)
    are enough; one extra internal node is enumerated anyway.
    """
    labels = list(m.ground.labels)
    n = len(labels)
    if n <= 1:
        return 0
    best = None
    for internal in range(1, max(1, n - 1) + 1):
        nodes = labels + list(range(internal))
        for edges in prufer_trees(nodes):
            adj = _adjacency(edges)
            if any(len(adj[lab]) != 1 for lab in labels):
                continue
            if any(len(adj[i]) < 2 for i in range(internal)):
                continue
            width = 0
            for v in range(internal):
                parts = []
                for comp in _components_without(adj, v):
                    mask = 0
                    for lab in labels:
                        if lab in comp:
                            mask |= 1 << m.ground.index(lab)
                    parts.append(mask)
                for picks in itertools.product((0, 1), repeat=len(parts)):
                    union = 0
                    for take, p in zip(picks, parts):
                        if take:
                            union |= p
                    width = max(width, m.lam_mask(union))
            value = max(width, _radius(adj))
            best = value if best is None else min(best, value)
    return best


def _subcubic_trees(count: int):
    """All leaf-labelled subcubic trees on leaves 0..count-1, built by
    iterated edge subdivision; internal nodes get ids count, count+1, ..."""
    if count == 2:
        yield [(0, 1)]
        return
    base = [[(0, 1)]]
    for k in range(2, count):
        grown = []
        for edges in base:
            internal = count + (k - 2)
            for idx, (u, v) in enumerate(edges):
                new = edges[:idx] + edges[idx + 1 :]
                new = new + [(u, internal), (internal, v), (internal, k)]
                grown.append(new)
        base = grown
    yield from base


def branch_width_oracle(m: Matroid) -> int:
    """Minimum over all subcubic trees of the maximum edge width."""
    n = len(m.ground)
    if n <= 1:
        return 1
    best = None
    for edges in _subcubic_trees(n):
        adj = _adjacency(edges)
        worst = 0
        for u, v in edges:
            # side of u
            seen = {u}
            stack = [u]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y != v and y not in seen:
                        seen.add(y)
                        stack.append(y)
            mask = 0
            for leaf in range(n):
                if leaf in seen:
                    mask |= 1 << leaf
            worst = max(worst, m.lam_mask(mask) + 1)
        best = worst if best is None else min(best, worst)
    return best


def graph_branch_width_oracle(graph) -> int:
    """Same tree enumeration with the vertex-boundary width function."""
    labels = list(graph.labels)
    n = len(labels)
    if n <= 1:
        return 0
    best = None
    for edges in _subcubic_trees(n):
        adj = _adjacency(edges)
        worst = 0
        for u, v in edges:
            seen = {u}
            stack = [u]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen and not (x == u and y == v):
                        seen.add(y)
                        stack.append(y)
            inside = [labels[leaf] for leaf in range(n) if leaf in seen]
            worst = max(worst, graph.boundary_size(inside))
        best = worst if best is None else min(best, worst)
    return best


# ---------------------------------------------------------------------------
# fan minors by definition


def fan_minor_oracle(m: Matroid, n: int, limits=None) -> bool:
    """Does some deletion/contraction minor realize the fan matroid?"""
    from fanforge.config import DEFAULT_LIMITS

    limits = limits or DEFAULT_LIMITS
    target = fan_matroid(n)
    size = len(target.ground)
    ground_n = len(m.ground)
    if ground_n < size:
        return False
    target_rank = n
    for keep in itertools.combinations(range(ground_n), size):
        keep_mask = 0
        for i in keep:
            keep_mask |= 1 << i
        gone = [i for i in range(ground_n) if not keep_mask >> i & 1]
        for assignment in itertools.product((0, 1), repeat=len(gone)):
            cmask = 0
            for take, i in zip(assignment, gone):
                if take:
                    cmask |= 1 << i
            dmask = m.full_mask & ~keep_mask & ~cmask
            view = m.minor(m.ground.from_mask(dmask), m.ground.from_mask(cmask))
            if view.rank_mask(view.full_mask) != target_rank:
                continue
            if is_isomorphic(view, target, limits) is not None:
                return True
    return False
