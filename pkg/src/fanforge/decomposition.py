"""Branch-depth and branch-width with witness decompositions.

Both parameters are computed exactly by complete feasibility searches
over the subset lattice, so every returned certificate carries a witness
decomposition plus a trace of the refuted smaller value.

Width conventions mirror the standard definitions: a decomposition is a
leaf-labelled tree with at least one internal node; the width of an
internal node is the maximum connectivity value over unions of parts of
the partition induced by removing the node; branch-decompositions are
subcubic and an edge has width lambda(one side) + 1.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections.abc import Sequence

from .config import DEFAULT_LIMITS, Limits, guard
from .errors import CapacityError, PreconditionError, ValidationError
from .graphs import MultiGraph
from .groundset import Subset
from .matroids import Matroid, MinorViewBackend
from .trees import Node, Tree


@dataclasses.dataclass(frozen=True)
class Decomposition:
    """Leaf-labelled tree witnessing a (width, radius) pair."""

    tree: Tree
    leaf_map: dict[str, Node]

    def validate(self, m: Matroid) -> None:
        leaves = set(self.tree.leaves())
        if len(self.tree.nodes) == 1:
            raise ValidationError("decomposition tree needs an internal node")
        mapped = set(self.leaf_map.values())
        if len(mapped) != len(self.leaf_map):
            raise ValidationError("leaf map is not injective")
        if mapped != leaves:
            raise ValidationError("leaf map is not onto the leaves")
        if set(self.leaf_map) != set(m.ground.labels):
            raise ValidationError("leaf map does not cover the ground set")
        for v in self.tree.internal_nodes():
            if self.tree.degree(v) < 2:
                raise ValidationError("internal node of degree < 2")

    def block_mask(self, m: Matroid, nodes: set[Node]) -> int:
        mask = 0
        for lab, node in self.leaf_map.items():
            if node in nodes:
                mask |= 1 << m.ground.index(lab)
        return mask


@dataclasses.dataclass(frozen=True)
class BranchDecomposition:
    """Subcubic leaf-labelled tree."""

    tree: Tree
    leaf_map: dict[str, Node]

    def validate(self, ground_labels: Sequence[str]) -> None:
        leaves = set(self.tree.leaves())
        mapped = set(self.leaf_map.values())
        if len(mapped) != len(self.leaf_map) or mapped != leaves:
            raise ValidationError("leaf map is not a bijection onto the leaves")
        if set(self.leaf_map) != set(ground_labels):
            raise ValidationError("leaf map does not cover the ground set")
        for v in self.tree.nodes:
            if self.tree.degree(v) not in (1, 3):
                raise ValidationError("tree is not subcubic")

    def side_mask(self, m: Matroid, u: Node, v: Node) -> int:
        side = self.tree.side_of_edge(u, v)
        mask = 0
        for lab, node in self.leaf_map.items():
            if node in side:
                mask |= 1 << m.ground.index(lab)
        return mask


@dataclasses.dataclass(frozen=True)
class SearchTrace:
    """Evidence that the search below the returned value was exhausted."""

    refuted_value: int | None
    states_explored: int
    note: str = ""


@dataclasses.dataclass(frozen=True)
class WidthCertificate:
    value: int
    witness: Decomposition | BranchDecomposition | None
    trace: SearchTrace


# ---------------------------------------------------------------------------
# widths of explicit decompositions


def node_width(m: Matroid, dec: Decomposition, v: Node, limits: Limits = DEFAULT_LIMITS) -> int:
    """Maximum lambda over unions of sub-collections of the partition
    induced by deleting the node; brute force over all 2^deg choices."""
    if v not in dec.tree.adj:
        raise ValidationError("node not in decomposition tree")
    if dec.tree.degree(v) <= 1:
        raise PreconditionError("node width is defined for internal nodes only")
    guard(dec.tree.degree(v), limits.node_degree, "node width sub-collection scan")
    blocks = [dec.block_mask(m, comp) for comp in dec.tree.components_without(v)]
    best = 0
    for picks in itertools.product((0, 1), repeat=len(blocks)):
        mask = 0
        for pick, b in zip(picks, blocks):
            if pick:
                mask |= b
        val = m.lam_mask(mask)
        if val > best:
            best = val
    return best


def decomposition_width(m: Matroid, dec: Decomposition, limits: Limits = DEFAULT_LIMITS) -> int:
    dec.validate(m)
    return max(node_width(m, dec, v, limits) for v in dec.tree.internal_nodes())


def decomposition_radius(dec: Decomposition) -> int:
    return dec.tree.radius()


def is_kr_decomposition(
    m: Matroid, dec: Decomposition, k: int, r: int, limits: Limits = DEFAULT_LIMITS
) -> bool:
    dec.validate(m)
    return decomposition_width(m, dec, limits) <= k and decomposition_radius(dec) <= r


# ---------------------------------------------------------------------------
# exact branch-depth


def _depth_feasible(lam: Sequence[int], full: int, k: int, height: int):
    """Complete search for a rooted decomposition of the full mask with all
    leaves within `height` and every node width at most k.

    Returns (choice, states) where choice maps feasible (mask, h) states to
    the chosen child partition, or (None, states) when infeasible.  Node
    width reduces to unions of child blocks only: by symmetry of lambda,
    a union involving the parent side equals the complementary union of
    child blocks.
    """
    memo: dict[tuple[int, int], bool] = {}
    choice: dict[tuple[int, int], list[int]] = {}

    def feasible(mask: int, h: int) -> bool:
        if mask.bit_count() == 1:
            return True
        if h <= 0 or lam[mask] > k:
            return False
        key = (mask, h)
        hit = memo.get(key)
        if hit is not None:
            return hit
        parts: list[int] = []

        def split(remaining: int, unions: list[int]) -> bool:
            if remaining == 0:
                return len(parts) >= 2
            low = remaining & -remaining
            rest = remaining ^ low
            t = rest
            while True:
                part = t | low
                if all(lam[u | part] <= k for u in unions) and feasible(part, h - 1):
                    parts.append(part)
                    if split(remaining ^ part, unions + [u | part for u in unions]):
                        return True
                    parts.pop()
                if t == 0:
                    return False
                t = (t - 1) & rest

        ok = split(mask, [0])
        memo[key] = ok
        if ok:
            choice[key] = list(parts)
        return ok

    ok = feasible(full, height)
    return (choice if ok else None), len(memo)


def _build_depth_tree(choice: dict, full: int, height: int, labels: Sequence[str]) -> Decomposition:
    counter = itertools.count()
    edges: list[tuple[Node, Node]] = []
    leaf_map: dict[str, Node] = {}

    def build(mask: int, h: int) -> Node:
        if mask.bit_count() == 1:
            lab = labels[mask.bit_length() - 1]
            leaf_map[lab] = lab
            return lab
        node = next(counter)
        for part in choice[(mask, h)]:
            edges.append((node, build(part, h - 1)))
        return node

    build(full, height)
    return Decomposition(Tree(edges), leaf_map)


def branch_depth(m: Matroid, limits: Limits = DEFAULT_LIMITS) -> WidthCertificate:
    """Exact branch-depth: the least k admitting a decomposition of width
    and radius at most k, or 0 for ground sets with at most one element."""
    n = len(m.ground)
    if n <= 1:
        return WidthCertificate(0, None, SearchTrace(None, 0, "at most one element"))
    guard(n, limits.branch_search, "branch-depth search")
    lam = m.lam_table()
    full = m.full_mask
    k_cap = max(1, max(lam))
    states_below = 0
    for k in range(1, k_cap + 1):
        choice, states = _depth_feasible(lam, full, k, k)
        if choice is not None:
            dec = _build_depth_tree(choice, full, k, m.ground.labels)
            trace = SearchTrace(k - 1 if k > 1 else 0, states_below, "no smaller (k,k)-decomposition")
            return WidthCertificate(k, dec, trace)
        states_below += states
    raise AssertionError("star decomposition bound violated")  # pragma: no cover


def branch_depth_at_least(m: Matroid, bound: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Threshold test, cheap for bounds up to 2 on any ground set size.

    bound <= 0 always holds; depth >= 1 means at least two elements;
    depth >= 2 means some subset has lambda >= 2 (radius-1 trees are
    stars whose width is the maximum lambda).  Larger bounds run one
    feasibility search at k = bound - 1.
    """
    n = len(m.ground)
    if bound <= 0:
        return True
    if bound == 1:
        return n >= 2
    if bound == 2:
        if n < 2:
            return False
        guard(n, limits.subset_scan, "lambda scan")
        lam = m.lam_table()
        return max(lam) >= 2
    guard(n, limits.branch_search, "branch-depth threshold search")
    lam = m.lam_table()
    choice, _ = _depth_feasible(lam, m.full_mask, bound - 1, bound - 1)
    return choice is None


# ---------------------------------------------------------------------------
# exact branch-width


def _bw_feasible(fn: Sequence[int], full: int, cap: int):
    """Complete search for a recursive bipartition of the full mask where
    every proper cluster X satisfies fn[X] <= cap."""
    memo: dict[int, bool] = {}
    choice: dict[int, int] = {}

    def feasible(mask: int) -> bool:
        if fn[mask] > cap:
            return False
        if mask.bit_count() == 1:
            return True
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        rest = mask ^ low
        ok = False
        sub = rest
        while True:
            part = sub | low
            if part != mask and feasible(part) and feasible(mask ^ part):
                ok = True
                choice[mask] = part
                break
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[mask] = ok
        return ok

    low = full & -full
    rest = full ^ low
    sub = rest
    while True:
        part = sub | low
        if part != full and feasible(part) and feasible(full ^ part):
            choice[full] = part
            return choice, len(memo)
        if sub == 0:
            return None, len(memo)
        sub = (sub - 1) & rest


def _build_branch_tree(choice: dict[int, int], full: int, labels: Sequence[str]) -> BranchDecomposition:
    counter = itertools.count()
    edges: list[tuple[Node, Node]] = []
    leaf_map: dict[str, Node] = {}

    def build(mask: int) -> Node:
        if mask.bit_count() == 1:
            lab = labels[mask.bit_length() - 1]
            leaf_map[lab] = lab
            return lab
        node = next(counter)
        part = choice[mask]
        edges.append((node, build(part)))
        edges.append((node, build(mask ^ part)))
        return node

    part = choice[full]
    edges.append((build(part), build(full ^ part)))
    return BranchDecomposition(Tree(edges), leaf_map)


def branch_width(m: Matroid, limits: Limits = DEFAULT_LIMITS) -> WidthCertificate:
    """Exact branch-width, defined as 1 for ground sets with at most one
    element; the witness is a subcubic tree whose every edge has width
    at most the returned value."""
    n = len(m.ground)
    if n <= 1:
        return WidthCertificate(1, None, SearchTrace(None, 0, "at most one element"))
    guard(n, limits.branch_search, "branch-width search")
    lam = m.lam_table()
    full = m.full_mask
    states_below = 0
    for k in range(1, max(lam) + 2):
        choice, states = _bw_feasible(lam, full, k - 1)
        if choice is not None:
            dec = _build_branch_tree(choice, full, m.ground.labels)
            trace = SearchTrace(k - 1 if k > 1 else None, states_below, "no narrower branch-decomposition")
            return WidthCertificate(k, dec, trace)
        states_below += states
    raise AssertionError("branch-width upper bound violated")  # pragma: no cover


def branch_width_at_most(m: Matroid, bound: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    n = len(m.ground)
    if n <= 1:
        return bound >= 1
    if bound < 1:
        return False
    guard(n, limits.branch_search, "branch-width threshold search")
    lam = m.lam_table()
    choice, _ = _bw_feasible(lam, m.full_mask, bound - 1)
    return choice is not None


def graph_branch_width(graph: MultiGraph, limits: Limits = DEFAULT_LIMITS) -> WidthCertificate:
    """Exact branch-width of a multigraph: edge width counts the vertices
    incident with both sides.  Defined as 0 for at most one edge."""
    labels = graph.labels
    mlen = len(labels)
    if mlen <= 1:
        return WidthCertificate(0, None, SearchTrace(None, 0, "at most one edge"))
    guard(mlen, limits.branch_search, "graph branch-width search")
    border = [0] * (1 << mlen)
    for mask in range(1, (1 << mlen) - 1):
        inside = [labels[i] for i in range(mlen) if mask >> i & 1]
        outside = [labels[i] for i in range(mlen) if not mask >> i & 1]
        border[mask] = len(
            graph.incident_vertices(inside) & graph.incident_vertices(outside)
        )
    full = (1 << mlen) - 1
    states_below = 0
    for k in range(0, len(graph.vertices) + 1):
        choice, states = _bw_feasible(border, full, k)
        if choice is not None:
            dec = _build_branch_tree(choice, full, labels)
            trace = SearchTrace(k - 1 if k > 0 else None, states_below, "no narrower branch-decomposition")
            return WidthCertificate(k, dec, trace)
        states_below += states
    raise AssertionError("graph branch-width bound violated")  # pragma: no cover


def branch_width_minor_monotone_check(m: Matroid, minor_view: Matroid, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Test hook: branch-width may only drop when passing to a minor."""
    if not isinstance(minor_view.backend, MinorViewBackend):
        raise PreconditionError("second argument must be a minor view")
    return branch_width(minor_view, limits).value <= branch_width(m, limits).value


# ---------------------------------------------------------------------------
# the separation lemma, constructively


def find_balanced_separation(
    m: Matroid, z: Subset, k: int, w: int, limits: Limits = DEFAULT_LIMITS
) -> tuple[Subset, Subset]:
    """Split the ground set so that both sides contain more than k elements
    of Z while the connectivity across the split stays below w.

    Follows the classical argument: orient each edge of a width-w branch
    decomposition towards sides holding more than k elements of Z; some
    edge is oriented both ways, and that edge induces the partition.
    """
    if k < 1 or w < 1:
        raise PreconditionError("k and w must be positive")
    zmask = m._mask(z)
    if zmask.bit_count() < 3 * k + 1:
        raise PreconditionError(f"need |Z| >= 3k+1 = {3 * k + 1}, got {zmask.bit_count()}")
    cert = branch_width(m, limits)
    if cert.value > w:
        raise PreconditionError(
            f"branch-width {cert.value} exceeds the assumed bound {w}"
        )
    dec = cert.witness
    assert dec is not None  # |Z| >= 4 forces at least 4 elements
    for u, v in sorted(dec.tree.edges(), key=str):
        a_mask = dec.side_mask(m, u, v)
        za = (a_mask & zmask).bit_count()
        zb = zmask.bit_count() - za
        if za > k and zb > k:
            x = m.ground.from_mask(a_mask)
            y = m.ground.from_mask(m.full_mask ^ a_mask)
            assert m.lam_mask(a_mask) < w
            return x, y
    raise AssertionError("orientation argument guarantees a balanced edge")  # pragma: no cover


# ---------------------------------------------------------------------------
# grafting decompositions per the component-assembly constructions


@dataclasses.dataclass(frozen=True)
class GraftResult:
    decomposition: Decomposition
    width: int
    radius: int


def graft_decompositions(
    m: Matroid,
    pieces: Sequence[tuple[Subset, Decomposition | None]],
    extra: Subset,
    limits: Limits = DEFAULT_LIMITS,
) -> GraftResult:
    """Join piece decompositions under a fresh root and hang one leaf per
    element of `extra` off the root.

    Pieces must disjointly cover the ground set minus `extra`.  Singleton
    blocks may pass None and become a direct leaf child of the root.
    The returned width and radius let callers assert the assembly bounds.
    """
    covered = 0
    for block, _ in pieces:
        bm = m._mask(block)
        if bm & covered:
            raise PreconditionError("piece blocks overlap")
        covered |= bm
    emask = m._mask(extra)
    if covered & emask:
        raise PreconditionError("extra elements overlap a piece block")
    if covered | emask != m.full_mask:
        raise PreconditionError("pieces plus extra do not cover the ground set")
    if len(pieces) + emask.bit_count() < 2:
        raise PreconditionError("the root needs degree at least 2")

    root: Node = "r"
    edges: list[tuple[Node, Node]] = []
    leaf_map: dict[str, Node] = {}
    for i, (block, dec) in enumerate(pieces):
        labels = block.labels()
        if dec is None:
            if len(labels) != 1:
                raise PreconditionError("only singleton blocks may omit a decomposition")
            node = ("p", i, labels[0])
            edges.append((root, node))
            leaf_map[labels[0]] = node
            continue
        if set(dec.leaf_map) != set(labels):
            raise PreconditionError("piece decomposition does not match its block")
        rename = {node: ("p", i, node) for node in dec.tree.nodes}
        for u, v in dec.tree.edges():
            edges.append((rename[u], rename[v]))
        center = dec.tree.center()
        edges.append((root, rename[center]))
        for lab, node in dec.leaf_map.items():
            leaf_map[lab] = rename[node]
    for lab in extra.labels():
        node = ("x", lab)
        edges.append((root, node))
        leaf_map[lab] = node
    if not edges:
        raise PreconditionError("grafting needs at least one piece or extra element")
    dec = Decomposition(Tree(edges), leaf_map)
    dec.validate(m)
    return GraftResult(dec, decomposition_width(m, dec, limits), decomposition_radius(dec))


# ---------------------------------------------------------------------------
# DOT output


def decomposition_to_dot(m: Matroid, dec: Decomposition | BranchDecomposition) -> str:
    """Graphviz rendering: leaves carry element names, every edge carries
    the lambda value of one side (branch decompositions also show width)."""
    names: dict[Node, str] = {}
    lines = ["graph decomposition {"]
    for i, node in enumerate(dec.tree.nodes):
        names[node] = f"n{i}"
        lab = next((k for k, v in dec.leaf_map.items() if v == node), None)
        if lab is not None:
            lines.append(f'  n{i} [label="{lab}"];')
        else:
            lines.append(f'  n{i} [label="{label}" shape=point];')
    for u, v in dec.tree.edges():
        side = dec.tree.side_of_edge(u, v)
        mask = 0
        for lab, node in dec.leaf_map.items():
            if node in side:
                mask |= 1 << m.ground.index(lab)
        lam = m.lam_mask(mask)
        note = f"lambda={lam}"
        if isinstance(dec, BranchDecomposition):
            note += f", width={lam + 1}"
        lines.append(f'  {names[u]} -- {names[v]} [label="{note}"];')
    lines.append("}")
    return "\n".join(lines)
