"""Matroids behind a uniform rank oracle.

A `Matroid` is a ground set plus a backend that answers rank queries on
bitmasks.  Concrete backends: explicit base lists (with axiom checking),
uniform matroids, cycle matroids of multigraphs, column matroids over
small prime fields, and unevaluated minor views.  Everything downstream
(connectivity function, components, decompositions, twists) only ever
talks to the rank oracle.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections.abc import Iterable

from .config import DEFAULT_LIMITS, Limits, guard
from .errors import AxiomError, DomainError, PreconditionError
from .graphs import MultiGraph, fan_graph, triangle_graph
from .groundset import GroundSet, Subset


# ---------------------------------------------------------------------------
# backends


class BaseListBackend:
    """Explicit family of bases, stored as bitmasks."""

    kind = "bases"

    def __init__(self, n: int, bases: Iterable[int], check: bool = True):
        bases = sorted(set(bases))
        if check:
            _check_base_axioms(n, bases)
        elif not bases:
            raise AxiomError("base family is empty")
        sizes = {b.bit_count() for b in bases}
        if len(sizes) != 1:
            raise AxiomError("bases are not equicardinal")
        self.n = n
        self.base_masks = tuple(bases)
        self.full_rank = bases[0].bit_count()

    def rank(self, mask: int) -> int:
        return max((mask & b).bit_count() for b in self.base_masks)


def _check_base_axioms(n: int, bases: list[int]) -> None:
    if not bases:
        raise AxiomError("base family is empty (axiom B1)")
    sizes = {b.bit_count() for b in bases}
    if len(sizes) != 1:
        raise AxiomError("bases are not equicardinal")
    base_set = set(bases)
    for b1 in bases:
        for b2 in bases:
            only1 = b1 & ~b2
            only2 = b2 & ~b1
            x = only1
            while x:
                xb = x & -x
                y = only2
                while y:
                    yb = y & -y
                    if (b1 ^ xb) | yb in base_set:
                        break
                    y ^= yb
                else:
                    raise AxiomError("base exchange axiom B2 fails")
                x ^= xb


class UniformBackend:
    kind = "uniform"

    def __init__(self, n: int, r: int):
        if not 0 <= r <= n:
            raise DomainError(f"uniform rank {r} out of range for {n} elements")
        self.n = n
        self.r = r

    def rank(self, mask: int) -> int:
        return min(mask.bit_count(), self.r)


class GraphicBackend:
    """Cycle matroid of a multigraph; elements are the edge labels."""

    kind = "graphic"

    def __init__(self, graph: MultiGraph):
        self.graph = graph
        self.n = len(graph.labels)
        # endpoints as small ints for the union-find in rank()
        vindex = {v: i for i, v in enumerate(graph.vertices)}
        self._ends = tuple(
            (vindex[u], vindex[v]) for u, v, _ in graph.edges
        )
        self._nv = len(graph.vertices)

    def rank(self, mask: int) -> int:
        parent = list(range(self._nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        m = mask
        while m:
            b = m & -m
            u, v = self._ends[b.bit_length() - 1]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                r += 1
            m ^= b
        return r


class LinearBackend:
    """Column matroid of a matrix over GF(q), q a small prime."""

    kind = "linear"
    FIELDS = (2, 3, 5, 7)

    def __init__(self, q: int, columns: tuple[tuple[int, ...], ...]):
        if q not in self.FIELDS:
            raise DomainError(f"field order {q} not supported (use one of {self.FIELDS})")
        self.q = q
        height = {len(c) for c in columns}
        if len(height) > 1:
            raise DomainError("columns have differing heights")
        self.columns = tuple(tuple(x % q for x in c) for c in columns)
        self.n = len(columns)

    def rank(self, mask: int) -> int:
        q = self.q
        rows = [list(self.columns[i]) for i in range(self.n) if mask >> i & 1]
        r = 0
        cols = len(rows[0]) if rows else 0
        for c in range(cols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], q - 2, q)
            rows[r] = [x * inv % q for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
            r += 1
            if r == len(rows):
                break
        return r


class MinorViewBackend:
    """Deferred minor: rank composes through the parent oracle."""

    kind = "minor"

    def __init__(self, parent: "Matroid", deleted_mask: int, contracted_mask: int):
        if deleted_mask & contracted_mask:
            raise PreconditionError("deleted and contracted sets overlap")
        self.parent = parent
        self.deleted_mask = deleted_mask
        self.contracted_mask = contracted_mask
        keep = [
            i for i in range(len(parent.ground))
            if not (deleted_mask | contracted_mask) >> i & 1
        ]
        self._to_parent = tuple(1 << i for i in keep)
        self.n = len(keep)
        self._base_rank = parent.rank_mask(contracted_mask)

    def parent_mask(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            b = m & -m
            out |= self._to_parent[b.bit_length() - 1]
            m ^= b
        return out

    def rank(self, mask: int) -> int:
        return self.parent.rank_mask(self.parent_mask(mask) | self.contracted_mask) - self._base_rank


# ---------------------------------------------------------------------------
# the matroid wrapper


class Matroid:
    """A finite matroid given by a rank oracle over a labelled ground set."""

    __slots__ = ("ground", "backend", "_memo", "_tables")

    def __init__(self, ground: GroundSet, backend):
        if backend.n != len(ground):
            raise DomainError("backend size disagrees with ground set")
        self.ground = ground
        self.backend = backend
        self._memo: dict[int, int] = {}
        self._tables: dict[str, list[int]] = {}

    def __repr__(self) -> str:
        return f"Matroid({self.backend.kind}, n={len(self.ground)}, r={self.rank_mask(self.full_mask)})"

    # -- mask-level oracle ---------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    def rank_mask(self, mask: int) -> int:
        memo = self._memo
        r = memo.get(mask)
        if r is None:
            r = self.backend.rank(mask)
            memo[mask] = r
        return r

    def lam_mask(self, mask: int) -> int:
        full = self.full_mask
        return self.rank_mask(mask) + self.rank_mask(full & ~mask) - self.rank_mask(full)

    def rank_table(self) -> list[int]:
        """Dense rank table over all 2^n subsets (gated by subset_scan limit
        at the call sites that can reach large ground sets)."""
        table = self._tables.get("rank")
        if table is None:
            table = self._build_rank_table()
            self._tables["rank"] = table
        return table

    def _build_rank_table(self) -> list[int]:
        n = len(self.ground)
        size = 1 << n
        if isinstance(self.backend, BaseListBackend):
            # down-closure of the bases, then a lattice DP; avoids the
            # max-over-bases scan per subset when the base family is big
            ind = bytearray(size)
            for b in self.backend.base_masks:
                ind[b] = 1
            for mask in range(size - 1, 0, -1):
                if ind[mask]:
                    m = mask
                    while m:
                        bit = m & -m
                        ind[mask ^ bit] = 1
                        m ^= bit
            table = [0] * size
            for mask in range(1, size):
                if ind[mask]:
                    table[mask] = mask.bit_count()
                else:
                    m = mask
                    best = 0
                    while m:
                        bit = m & -m
                        sub = table[mask ^ bit]
                        if sub > best:
                            best = sub
                        m ^= bit
                    table[mask] = best
            return table
        rank = self.backend.rank
        return [rank(mask) for mask in range(size)]

    def lam_table(self) -> list[int]:
        table = self._tables.get("lam")
        if table is None:
            ranks = self.rank_table()
            full = self.full_mask
            total = ranks[full]
            table = [ranks[m] + ranks[full ^ m] - total for m in range(full + 1)]
            self._tables["lam"] = table
        return table

    # -- public rank interface ------------------------------------------------

    def subset(self, labels: Iterable[str]) -> Subset:
        return self.ground.subset(labels)

    def _mask(self, x) -> int:
        if isinstance(x, Subset):
            if x.ground != self.ground:
                raise DomainError("subset belongs to a different ground set")
            return x.mask
        if isinstance(x, int):
            if x < 0 or x >> len(self.ground):
                raise DomainError("mask outside ground set")
            return x
        return self.ground.mask_of(x)

    def rank(self, x) -> int:
        return self.rank_mask(self._mask(x))

    def lam(self, x) -> int:
        """The connectivity function r(X) + r(E\\X) - r(E)."""
        return self.lam_mask(self._mask(x))

    def is_independent(self, x) -> bool:
        mask = self._mask(x)
        return self.rank_mask(mask) == mask.bit_count()

    def is_base(self, x) -> bool:
        mask = self._mask(x)
        full = self.full_mask
        return (
            mask.bit_count() == self.rank_mask(full)
            and self.rank_mask(mask) == mask.bit_count()
        )

    # -- enumeration -----------------------------------------------------------

    def greedy_base(self) -> Subset:
        """The lexicographically first base (lowest indices preferred)."""
        mask = 0
        r = 0
        for i in range(len(self.ground)):
            cand = mask | 1 << i
            if self.rank_mask(cand) > r:
                mask = cand
                r += 1
        return self.ground.from_mask(mask)

    def bases(self, limits: Limits = DEFAULT_LIMITS) -> list[Subset]:
        n = len(self.ground)
        guard(n, limits.enumeration, "base enumeration")
        if isinstance(self.backend, BaseListBackend):
            return [self.ground.from_mask(b) for b in self.backend.base_masks]
        r = self.rank_mask(self.full_mask)
        out = []
        for combo in itertools.combinations(range(n), r):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if self.rank_mask(mask) == r:
                out.append(self.ground.from_mask(mask))
        return out

    def circuits(self, limits: Limits = DEFAULT_LIMITS) -> list[Subset]:
        """All minimal dependent sets."""
        n = len(self.ground)
        guard(n, limits.enumeration, "circuit enumeration")
        out = []
        for size in range(1, n + 1):
            for combo in itertools.combinations(range(n), size):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                if self.rank_mask(mask) >= size:
                    continue
                m = mask
                minimal = True
                while m:
                    bit = m & -m
                    if self.rank_mask(mask ^ bit) < size - 1:
                        minimal = False
                        break
                    m ^= bit
                if minimal:
                    out.append(self.ground.from_mask(mask))
        return out

    def fundamental_circuit(self, e: str, base: Subset) -> Subset:
        """The unique circuit inside B + e for e outside the base B."""
        bmask = self._mask(base)
        ei = self.ground.index(e)
        if bmask >> ei & 1:
            raise PreconditionError(f"element {e!r} lies in the base")
        if not self.is_base(bmask):
            raise PreconditionError("given set is not a base")
        r = self.rank_mask(self.full_mask)
        circuit = 1 << ei
        m = bmask
        while m:
            bit = m & -m
            if self.rank_mask((bmask ^ bit) | 1 << ei) == r:
                circuit |= bit
            m ^= bit
        return self.ground.from_mask(circuit)

    # -- derived matroids -------------------------------------------------------

    def minor(self, deleted, contracted) -> "Matroid":
        dmask = self._mask(deleted)
        cmask = self._mask(contracted)
        if dmask & cmask:
            raise PreconditionError("deleted and contracted sets overlap")
        backend = MinorViewBackend(self, dmask, cmask)
        keep = [lab for i, lab in enumerate(self.ground.labels) if not (dmask | cmask) >> i & 1]
        return Matroid(GroundSet(keep), backend)

    def delete(self, x) -> "Matroid":
        return self.minor(x, 0)

    def contract(self, x) -> "Matroid":
        return self.minor(0, x)

    def restrict(self, x) -> "Matroid":
        mask = self._mask(x)
        return self.minor(self.full_mask & ~mask, 0)

    def flatten(self) -> "Matroid":
        """Collapse a chain of minor views into a single view of the root."""
        if not isinstance(self.backend, MinorViewBackend):
            return self
        be = self.backend
        parent = be.parent
        dmask, cmask = be.deleted_mask, be.contracted_mask
        while isinstance(parent.backend, MinorViewBackend):
            pbe = parent.backend
            dmask = pbe.parent_mask(dmask) | pbe.deleted_mask
            cmask = pbe.parent_mask(cmask) | pbe.contracted_mask
            parent = pbe.parent
        return parent.minor(dmask, cmask)

    def dual(self, limits: Limits = DEFAULT_LIMITS) -> "Matroid":
        """The dual matroid, materialized as an explicit base list
        (complementation), with a fast path for uniform backends."""
        if isinstance(self.backend, UniformBackend):
            be = self.backend
            return Matroid(self.ground, UniformBackend(be.n, be.n - be.r))
        full = self.full_mask
        if isinstance(self.backend, BaseListBackend):
            masks = [full ^ b for b in self.backend.base_masks]
        else:
            masks = [full ^ b.mask for b in self.bases(limits)]
        return Matroid(self.ground, BaseListBackend(len(self.ground), masks, check=False))

    # -- connectivity -----------------------------------------------------------

    def components(self) -> list[Subset]:
        """Partition of the ground set into connectivity components.

        Components coincide with the connected components of any
        fundamental graph, which gives a cheap algorithm; minimality of
        the blocks under lambda = 0 is covered by the brute-force suite.
        """
        n = len(self.ground)
        if n == 0:
            return [self.ground.empty()]
        view = self.fundamental_graph(self.greedy_base())
        return [self.ground.from_mask(m) for m in view.component_masks()]

    def is_connected(self) -> bool:
        comps = self.components()
        return len(comps) == 1 and comps[0].mask == self.full_mask

    def fundamental_graph(self, base: Subset) -> "FundamentalGraphView":
        bmask = self._mask(base)
        if not self.is_base(bmask):
            raise PreconditionError("given set is not a base")
        n = len(self.ground)
        r = self.rank_mask(self.full_mask)
        adj = [0] * n
        for e in range(n):
            if bmask >> e & 1:
                continue
            circuit = 1 << e
            m = bmask
            while m:
                bit = m & -m
                if self.rank_mask((bmask ^ bit) | 1 << e) == r:
                    circuit |= bit
                m ^= bit
            rest = circuit & ~(1 << e)
            adj[e] |= rest
            m = rest
            while m:
                bit = m & -m
                adj[bit.bit_length() - 1] |= 1 << e
                m ^= bit
        return FundamentalGraphView(self.ground, tuple(adj), self.ground.from_mask(bmask))


# ---------------------------------------------------------------------------
# fundamental graphs


@dataclasses.dataclass(frozen=True)
class FundamentalGraphView:
    """Bipartite adjacency between a base and its complement.

    `adjacency[i]` is the neighbour mask of element i; `colour_class_b`
    is the base-side part of the bipartition.
    """

    ground: GroundSet
    adjacency: tuple[int, ...]
    colour_class_b: Subset

    def neighbours(self, label: str) -> tuple[str, ...]:
        return self.ground.labels_of(self.adjacency[self.ground.index(label)])

    def edges(self) -> list[tuple[str, str]]:
        out = []
        n = len(self.ground)
        for i in range(n):
            m = self.adjacency[i] >> i + 1
            j = i + 1
            while m:
                if m & 1:
                    out.append((self.ground.labels[i], self.ground.labels[j]))
                m >>= 1
                j += 1
        return out

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def induced(self, x: Subset) -> "FundamentalGraphView":
        if x.ground != self.ground:
            raise DomainError("subset belongs to a different ground set")
        keep = [i for i in range(len(self.ground)) if x.mask >> i & 1]
        sub = GroundSet([self.ground.labels[i] for i in keep])
        remap = {old: new for new, old in enumerate(keep)}
        adj = []
        for i in keep:
            m = self.adjacency[i] & x.mask
            out = 0
            while m:
                bit = m & -m
                out |= 1 << remap[bit.bit_length() - 1]
                m ^= bit
            adj.append(out)
        bmask = 0
        for new, old in enumerate(keep):
            if self.colour_class_b.mask >> old & 1:
                bmask |= 1 << new
        return FundamentalGraphView(sub, tuple(adj), sub.from_mask(bmask))

    def component_masks(self) -> list[int]:
        n = len(self.ground)
        seen = 0
        out = []
        for i in range(n):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = comp
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    bit = m & -m
                    nxt |= self.adjacency[bit.bit_length() - 1]
                    m ^= bit
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        if len(self.ground) == 0:
            return True
        return len(self.component_masks()) == 1

    def is_induced_path(self, order: Iterable[str]) -> bool:
        """Whether the given vertex order is an induced path."""
        idx = [self.ground.index(lab) for lab in order]
        if len(set(idx)) != len(idx):
            return False
        for pos, i in enumerate(idx):
            for pos2 in range(pos + 1, len(idx)):
                adjacent = self.adjacency[i] >> idx[pos2] & 1
                if adjacent != (1 if pos2 == pos + 1 else 0):
                    return False
        return True

    def eccentricity(self, label: str) -> int:
        start = self.ground.index(label)
        dist = 0
        seen = 1 << start
        frontier = seen
        while True:
            nxt = 0
            m = frontier
            while m:
                bit = m & -m
                nxt |= self.adjacency[bit.bit_length() - 1]
                m ^= bit
            nxt &= ~seen
            if not nxt:
                return dist
            dist += 1
            seen |= nxt
            frontier = nxt

    def diameter(self) -> int:
        if len(self.ground) == 0:
            return 0
        return max(self.eccentricity(lab) for lab in self.ground.labels)


# ---------------------------------------------------------------------------
# constructors


def from_bases(labels: Iterable[str], bases: Iterable[Iterable[str]], check: bool = True) -> Matroid:
    ground = GroundSet(labels)
    masks = [ground.mask_of(b) for b in bases]
    return Matroid(ground, BaseListBackend(len(ground), masks, check=check))


def uniform(r: int, n: int, labels: Iterable[str] | None = None) -> Matroid:
    ground = GroundSet(labels if labels is not None else (str(i + 1) for i in range(n)))
    if len(ground) != n:
        raise DomainError("label count disagrees with n")
    return Matroid(ground, UniformBackend(n, r))


def free_matroid(labels: Iterable[str]) -> Matroid:
    ground = GroundSet(labels)
    return Matroid(ground, UniformBackend(len(ground), len(ground)))


def graphic_matroid(graph: MultiGraph) -> Matroid:
    return Matroid(GroundSet(graph.labels), GraphicBackend(graph))


def linear_matroid(q: int, columns: dict[str, Iterable[int]]) -> Matroid:
    ground = GroundSet(columns.keys())
    cols = tuple(tuple(columns[lab]) for lab in ground.labels)
    return Matroid(ground, LinearBackend(q, cols))


def fan_matroid(n: int) -> Matroid:
    """Cycle matroid of the fan: a star joined with a path through its leaves."""
    return graphic_matroid(fan_graph(n))


def triangle_matroid() -> Matroid:
    """Cycle matroid of the triangle, the running small example."""
    return graphic_matroid(triangle_graph())


def direct_sum(*parts: Matroid, limits: Limits = DEFAULT_LIMITS) -> Matroid:
    """Direct sum with label clash detection; materialized as a base list."""
    labels: list[str] = []
    for m in parts:
        labels.extend(m.ground.labels)
    ground = GroundSet(labels)  # raises on duplicates
    offset = 0
    combined = [0]
    for m in parts:
        part_bases = [b.mask << offset for b in m.bases(limits)]
        combined = [c | pb for c in combined for pb in part_bases]
        offset += len(m.ground)
    return Matroid(ground, BaseListBackend(len(ground), combined, check=False))


# ---------------------------------------------------------------------------
# lemma checks and isomorphism


def connfunction_minor_bounds(parent: Matroid, minor_view: Matroid, x: Subset) -> tuple[bool, bool]:
    """Evaluate both connectivity bounds that relate a matroid and a minor.

    First bound: lambda_M(X) <= lambda_M(E(N)) + lambda_N(X) for X inside
    the minor.  Second: lambda_M(X) <= lambda_N(X & E(N)) + |E(M) - E(N)|
    for X inside the parent.  When X is not contained in the minor the
    first bound is evaluated on X & E(N), which is still a valid instance.
    """
    node = minor_view
    found = node is parent
    while not found and isinstance(node.backend, MinorViewBackend):
        node = node.backend.parent
        found = node is parent
    if not found:
        raise PreconditionError("second argument is not a minor view of the first")
    en_mask = parent.ground.mask_of(minor_view.ground.labels)
    if x.ground == parent.ground:
        xmask = x.mask
    elif x.ground == minor_view.ground:
        xmask = parent.ground.mask_of(x.labels())
    else:
        raise DomainError("subset belongs to neither ground set")
    inner_parent = xmask & en_mask
    inner_view = minor_view.ground.mask_of(parent.ground.labels_of(inner_parent))
    lam_inner = minor_view.lam_mask(inner_view)
    bound1 = parent.lam_mask(inner_parent) <= parent.lam_mask(en_mask) + lam_inner
    bound2 = parent.lam_mask(xmask) <= lam_inner + (parent.full_mask & ~en_mask).bit_count()
    return bound1, bound2


def _element_signatures(m: Matroid) -> list[tuple]:
    n = len(m.ground)
    table = m.rank_table()
    sigs: list[list] = [[] for _ in range(n)]
    for k in range(1, n + 1):
        buckets: list[dict[int, int]] = [{} for _ in range(n)]
        for combo in itertools.combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            r = table[mask]
            for i in combo:
                buckets[i][r] = buckets[i].get(r, 0) + 1
        for i in range(n):
            sigs[i].append(tuple(sorted(buckets[i].items())))
    return [tuple(s) for s in sigs]


def is_isomorphic(
    m1: Matroid, m2: Matroid, limits: Limits = DEFAULT_LIMITS
) -> dict[str, str] | None:
    """Search for a rank-preserving bijection between the ground sets.

    Returns a label mapping or None.  Backtracking over element
    signatures (multisets of ranks of the k-subsets through each
    element), with incremental rank-equality pruning; a successful
    mapping matches the full rank oracle and therefore maps bases to
    bases in both directions.
    """
    n = len(m1.ground)
    if n != len(m2.ground):
        return None
    guard(n, limits.isomorphism, "isomorphism search")
    if n == 0:
        return {}
    t1, t2 = m1.rank_table(), m2.rank_table()
    if t1[(1 << n) - 1] != t2[(1 << n) - 1]:
        return None
    sig1, sig2 = _element_signatures(m1), _element_signatures(m2)
    if sorted(sig1) != sorted(sig2):
        return None
    candidates = [
        [j for j in range(n) if sig2[j] == sig1[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int, mapped_mask: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if used[j]:
                continue
            mapping[i] = j
            used[j] = True
            ok = True
            # every subset of the mapped prefix that contains i must keep rank
            sub = mapped_mask
            while True:
                s1 = sub | 1 << i
                s2 = 0
                mm = s1
                while mm:
                    bit = mm & -mm
                    s2 |= 1 << mapping[bit.bit_length() - 1]
                    mm ^= bit
                if t1[s1] != t2[s2]:
                    ok = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & mapped_mask
            if ok and extend(pos + 1, mapped_mask | 1 << i):
                return True
            used[j] = False
            mapping[i] = -1
        return False

    if not extend(0, 0):
        return None
    return {
        m1.ground.labels[i]: m2.ground.labels[mapping[i]] for i in range(n)
    }
