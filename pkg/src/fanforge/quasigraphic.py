"""Quasi-graphic matroids from proper cycle tripartitions.

A graph plus a partition of its cycles into balanced, L, and F classes
(theta-closed balanced class; every L-cycle meets every F-cycle) defines
a matroid whose circuits are balanced cycles, unbalanced thetas, tight
handcuffs, vertex-disjoint L-pairs, and loose handcuffs of F-pairs.  The
rank formula counts vertices against balanced components or component
counts, depending on whether an F-cycle is present.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections.abc import Iterable

from .config import DEFAULT_LIMITS, Limits, guard
from .errors import PreconditionError
from .graphs import MultiGraph, cycles_of, is_theta, looped_path_graph
from .groundset import GroundSet
from .matroids import Matroid

Cycle = frozenset[str]


@dataclasses.dataclass(frozen=True)
class ProperTripartition:
    """Graph with its cycles split into balanced / L / F classes."""

    graph: MultiGraph
    balanced: frozenset[Cycle]
    l_class: frozenset[Cycle]
    f_class: frozenset[Cycle]

    def cycle_class(self, cycle: Cycle) -> str:
        if cycle in self.balanced:
            return "B"
        if cycle in self.l_class:
            return "L"
        if cycle in self.f_class:
            return "F"
        raise PreconditionError("unknown cycle")

    def all_cycles(self) -> frozenset[Cycle]:
        return self.balanced | self.l_class | self.f_class


def validate_tripartition(
    graph: MultiGraph,
    balanced: Iterable[Iterable[str]],
    l_class: Iterable[Iterable[str]],
    f_class: Iterable[Iterable[str]],
    limits: Limits = DEFAULT_LIMITS,
) -> tuple[bool, str | None]:
    """Disjoint cover of all cycles, theta closure of the balanced class,
    and a common vertex for every L-F pair."""
    guard(len(graph.labels), limits.enumeration, "cycle enumeration")
    b = {frozenset(c) for c in balanced}
    l = {frozenset(c) for c in l_class}
    f = {frozenset(c) for c in f_class}
    cycles = set(cycles_of(graph))
    if b | l | f != cycles:
        return False, "classes do not cover exactly the cycles of the graph"
    if b & l or b & f or l & f:
        return False, "classes overlap"
    for c1, c2 in itertools.combinations(b, 2):
        sym = c1 ^ c2
        if sym in cycles and sym not in b:
            return False, "balanced class violates the theta property"
    for lc in l:
        lv = graph.incident_vertices(lc)
        for fc in f:
            if not lv & graph.incident_vertices(fc):
                return False, "an L-cycle and an F-cycle share no vertex"
    return True, None


def tripartition(
    graph: MultiGraph,
    balanced: Iterable[Iterable[str]],
    l_class: Iterable[Iterable[str]],
    f_class: Iterable[Iterable[str]],
    limits: Limits = DEFAULT_LIMITS,
) -> ProperTripartition:
    ok, why = validate_tripartition(graph, balanced, l_class, f_class, limits)
    if not ok:
        raise PreconditionError(f"improper tripartition: {why}")
    return ProperTripartition(
        graph,
        frozenset(frozenset(c) for c in balanced),
        frozenset(frozenset(c) for c in l_class),
        frozenset(frozenset(c) for c in f_class),
    )


# ---------------------------------------------------------------------------
# the five circuit rules


def quasi_circuits(part: ProperTripartition, limits: Limits = DEFAULT_LIMITS) -> list[frozenset[str]]:
    """Edge sets of all circuits, assembled rule by rule."""
    graph = part.graph
    guard(len(graph.labels), limits.enumeration, "circuit enumeration")
    cycles = sorted(part.all_cycles(), key=sorted)
    unbalanced = [c for c in cycles if c not in part.balanced]
    out: set[frozenset[str]] = set()

    # (1) balanced cycles
    out.update(part.balanced)

    # (2) theta subgraphs containing no balanced cycle
    m = len(graph.labels)
    for r in range(3, m + 1):
        for combo in itertools.combinations(graph.labels, r):
            edge_set = frozenset(combo)
            if not is_theta(graph, combo):
                continue
            if any(c <= edge_set for c in part.balanced):
                continue
            out.add(edge_set)

    # (3) tight handcuffs: edge-disjoint unbalanced cycles on one shared vertex
    for c1, c2 in itertools.combinations(unbalanced, 2):
        if c1 & c2:
            continue
        if len(graph.incident_vertices(c1) & graph.incident_vertices(c2)) == 1:
            out.add(c1 | c2)

    # (4) vertex-disjoint pairs inside L
    lclass = sorted(part.l_class, key=sorted)
    for c1, c2 in itertools.combinations(lclass, 2):
        if not graph.incident_vertices(c1) & graph.incident_vertices(c2):
            out.add(c1 | c2)

    # (5) loose handcuffs: vertex-disjoint F-pairs plus a minimal joining path
    fclass = sorted(part.f_class, key=sorted)
    for c1, c2 in itertools.combinations(fclass, 2):
        v1, v2 = graph.incident_vertices(c1), graph.incident_vertices(c2)
        if v1 & v2:
            continue
        for path in _joining_paths(graph, v1, v2, c1 | c2):
            out.add(c1 | c2 | path)

    return sorted(out, key=sorted)


def _joining_paths(
    graph: MultiGraph, v1: set, v2: set, used_edges: frozenset[str]
) -> list[frozenset[str]]:
    """Paths from v1 to v2 whose internal vertices avoid both vertex sets;
    such a path is inclusion-minimal among joining subgraphs."""
    out = []
    for u, v, lab in graph.edges:
        if lab in used_edges or u == v:
            continue
        for start, other in ((u, v), (v, u)):
            if start not in v1:
                continue
            if other in v2:
                out.append(frozenset([lab]))
            elif other not in v1:
                out.extend(
                    frozenset([lab]) | rest
                    for rest in _extend_path(graph, other, {start, other}, v1, v2, used_edges | {lab})
                )
    return out


def _extend_path(graph, tip, visited, v1, v2, used):
    out = []
    for u, v, lab in graph.edges:
        if lab in used or u == v:
            continue
        if u == tip:
            nxt = v
        elif v == tip:
            nxt = u
        else:
            continue
        if nxt in visited or nxt in v1:
            continue
        if nxt in v2:
            out.append(frozenset([lab]))
        else:
            out.extend(
                frozenset([lab]) | rest
                for rest in _extend_path(graph, nxt, visited | {nxt}, v1, v2, used | {lab})
            )
    return out


# ---------------------------------------------------------------------------
# rank formula and the matroid backend


class QuasiGraphicBackend:
    kind = "quasigraphic"

    def __init__(self, part: ProperTripartition):
        self.part = part
        graph = part.graph
        self.n = len(graph.labels)
        index = {lab: i for i, lab in enumerate(graph.labels)}
        self._cycles = [
            (sum(1 << index[lab] for lab in c), part.cycle_class(c))
            for c in sorted(part.all_cycles(), key=sorted)
        ]
        vindex = {v: i for i, v in enumerate(graph.vertices)}
        self._ends = tuple((vindex[u], vindex[v]) for u, v, _ in graph.edges)
        self._nv = len(graph.vertices)

    def rank(self, mask: int) -> int:
        if mask == 0:
            return 0
        # components of the edge-induced subgraph, as edge masks
        parent = list(range(self._nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        touched: set[int] = set()
        m = mask
        while m:
            bit = m & -m
            u, v = self._ends[bit.bit_length() - 1]
            touched.add(u)
            touched.add(v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
            m ^= bit
        comp_edges: dict[int, int] = {}
        m = mask
        while m:
            bit = m & -m
            root = find(self._ends[bit.bit_length() - 1][0])
            comp_edges[root] = comp_edges.get(root, 0) | bit
            m ^= bit

        has_f = any(cls == "F" and cmask & mask == cmask for cmask, cls in self._cycles)
        nv = len(touched)
        if has_f:
            balanced_comps = 0
            for emask in comp_edges.values():
                if all(
                    cls == "B"
                    for cmask, cls in self._cycles
                    if cmask & emask == cmask
                ):
                    balanced_comps += 1
            return nv - balanced_comps
        has_l = any(cls == "L" and cmask & mask == cmask for cmask, cls in self._cycles)
        return nv - len(comp_edges) + (1 if has_l else 0)


def quasi_rank(part: ProperTripartition, labels: Iterable[str]) -> int:
    backend = QuasiGraphicBackend(part)
    index = {lab: i for i, lab in enumerate(part.graph.labels)}
    mask = 0
    for lab in labels:
        mask |= 1 << index[lab]
    return backend.rank(mask)


def quasi_graphic_matroid(part: ProperTripartition) -> Matroid:
    return Matroid(GroundSet(part.graph.labels), QuasiGraphicBackend(part))


def bicircular_fan(n: int, limits: Limits = DEFAULT_LIMITS) -> Matroid:
    """The bicircular matroid of the looped path: every cycle unbalanced
    in the F class.  Isomorphic to the fan matroid of the same index."""
    graph = looped_path_graph(n)
    part = tripartition(graph, [], [], cycles_of(graph), limits)
    return quasi_graphic_matroid(part)


def graphic_tripartition(graph: MultiGraph, limits: Limits = DEFAULT_LIMITS) -> ProperTripartition:
    """All cycles balanced: the quasi-graphic matroid equals the cycle matroid."""
    return tripartition(graph, cycles_of(graph), [], [], limits)


def branch_width_bound_check(
    part: ProperTripartition, limits: Limits = DEFAULT_LIMITS
) -> tuple[int, int, bool]:
    """Compare the graph branch-width with the matroid branch-width; the
    matroid value never exceeds the graph value plus three."""
    from .decomposition import branch_width, graph_branch_width

    bw_graph = graph_branch_width(part.graph, limits).value
    bw_matroid = branch_width(quasi_graphic_matroid(part), limits).value
    return bw_graph, bw_matroid, bw_matroid <= bw_graph + 3
