"""Twisted matroids and the fundamental-graph calculus.

A twisted matroid is a set system holding the symmetric differences of a
matroid's bases with one fixed base.  The empty set is feasible, feasible
pairs form a bipartite graph, and the whole family supports a twist /
restriction calculus whose minors track matroid minors exactly.  This
module keeps feasible families explicit (bitmask hash sets), which is
what the constructive procedures need at desk scale.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Iterable

from .config import DEFAULT_LIMITS, Limits, guard
from .errors import AxiomError, CapacityError, DomainError, PreconditionError
from .groundset import GroundSet, Subset
from .matroids import BaseListBackend, FundamentalGraphView, Matroid


class TwistedMatroid:
    """Ground set plus an explicit family of feasible bitmasks."""

    __slots__ = ("ground", "feasible_masks", "_graph", "_canonical")

    def __init__(self, ground: GroundSet, feasible_masks: Iterable[int]):
        self.ground = ground
        self.feasible_masks = frozenset(feasible_masks)
        for m in self.feasible_masks:
            if m < 0 or m >> len(ground):
                raise DomainError("feasible mask outside ground set")
        self._graph: FundamentalGraphView | None = None
        self._canonical: Matroid | None = None

    def __repr__(self) -> str:
        return f"TwistedMatroid(n={len(self.ground)}, |F|={len(self.feasible_masks)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TwistedMatroid)
            and self.ground == other.ground
            and self.feasible_masks == other.feasible_masks
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.feasible_masks))

    # -- basics ---------------------------------------------------------------

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

    def is_feasible(self, x) -> bool:
        return self._mask(x) in self.feasible_masks

    def feasible_subsets(self) -> list[Subset]:
        return [self.ground.from_mask(m) for m in sorted(self.feasible_masks)]

    def fundamental_graph(self) -> FundamentalGraphView:
        """Graph on the ground set whose edges are the feasible pairs."""
        if self._graph is None:
            n = len(self.ground)
            adj = [0] * n
            for m in self.feasible_masks:
                if m.bit_count() == 2:
                    lo = m & -m
                    hi = m ^ lo
                    adj[lo.bit_length() - 1] |= hi
                    adj[hi.bit_length() - 1] |= lo
            self._graph = FundamentalGraphView(
                self.ground, tuple(adj), self.canonical_base()
            )
        return self._graph

    def _colourings(self) -> list[tuple[int, int]]:
        """Per component of the pair graph, the two colour-class masks.

        Raises AxiomError when the pair graph is odd-cycled, which cannot
        happen for a family satisfying the twisted axioms.
        """
        n = len(self.ground)
        adj = [0] * n
        for m in self.feasible_masks:
            if m.bit_count() == 2:
                lo = m & -m
                hi = m ^ lo
                adj[lo.bit_length() - 1] |= hi
                adj[hi.bit_length() - 1] |= lo
        comps = []
        seen = 0
        for i in range(n):
            if seen >> i & 1:
                continue
            side0, side1 = 1 << i, 0
            frontier = 1 << i
            parity = 0
            comp = 1 << i
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    bit = m & -m
                    nxt |= adj[bit.bit_length() - 1]
                    m ^= bit
                nxt &= ~comp
                parity ^= 1
                if parity:
                    side1 |= nxt
                else:
                    side0 |= nxt
                comp |= nxt
                frontier = nxt
            for mask in self.feasible_masks:
                if mask.bit_count() == 2 and mask & comp:
                    if not (mask & side0 and mask & side1):
                        raise AxiomError("pair graph is not bipartite")
            seen |= comp
            comps.append((side0, side1))
        return comps

    def canonical_base(self) -> Subset:
        """Deterministic base: in each component of the pair graph, take
        the side containing the component's lowest-indexed element."""
        mask = 0
        for side0, _ in self._colourings():
            mask |= side0
        return self.ground.from_mask(mask)

    def bases(self, limits: Limits = DEFAULT_LIMITS) -> list[Subset]:
        """All bases, one colour class per proper 2-colouring of the pair graph."""
        comps = self._colourings()
        guard(len(comps), limits.enumeration, "base enumeration of a twisted matroid")
        masks = [0]
        for side0, side1 in comps:
            masks = [m | side0 for m in masks] + [m | side1 for m in masks]
        return [self.ground.from_mask(m) for m in sorted(set(masks))]

    # -- associated matroids ----------------------------------------------------

    def matroid(self, base: Subset | None = None) -> Matroid:
        """The matroid associated via the given base (canonical by default)."""
        if base is None:
            if self._canonical is not None:
                return self._canonical
            bmask = self.canonical_base().mask
        else:
            bmask = self._mask(base)
        backend = BaseListBackend(
            len(self.ground), [m ^ bmask for m in self.feasible_masks], check=False
        )
        out = Matroid(self.ground, backend)
        if base is None:
            self._canonical = out
        return out

    def associated_matroids(self, limits: Limits = DEFAULT_LIMITS) -> list[tuple[Matroid, Subset]]:
        return [(self.matroid(b), b) for b in self.bases(limits)]

    # -- calculus ----------------------------------------------------------------

    def twist(self, f) -> "TwistedMatroid":
        """Twist by a feasible set; twisting by anything else would break
        the axioms, so it is rejected."""
        fmask = self._mask(f)
        if fmask not in self.feasible_masks:
            raise PreconditionError("can only twist by a feasible set")
        return TwistedMatroid(self.ground, (m ^ fmask for m in self.feasible_masks))

    def restrict(self, x) -> "TwistedMatroid":
        """Keep the feasible sets inside X; the ground set shrinks to X."""
        xmask = self._mask(x)
        keep = [i for i in range(len(self.ground)) if xmask >> i & 1]
        sub = GroundSet([self.ground.labels[i] for i in keep])
        remap = {1 << old: 1 << new for new, old in enumerate(keep)}
        masks = []
        for m in self.feasible_masks:
            if m & ~xmask:
                continue
            out = 0
            mm = m
            while mm:
                bit = mm & -mm
                out |= remap[bit]
                mm ^= bit
            masks.append(out)
        return TwistedMatroid(sub, masks)

    def minor(self, f, x) -> "TwistedMatroid":
        """Twist by a feasible set, then restrict."""
        return self.twist(f).restrict(x)

    # -- invariants shared by all associated matroids -----------------------------

    def lam(self, x) -> int:
        return self.matroid().lam_mask(self._mask(x))

    def components(self) -> list[Subset]:
        return self.matroid().components()

    def is_connected(self) -> bool:
        return self.matroid().is_connected()


def twist_of(m: Matroid, base: Subset, limits: Limits = DEFAULT_LIMITS) -> TwistedMatroid:
    """The twisted matroid of (M, B): feasible sets are B-symmetric
    differences of bases."""
    bmask = m._mask(base)
    if not m.is_base(bmask):
        raise PreconditionError("given set is not a base")
    masks = [b.mask ^ bmask for b in m.bases(limits)]
    return TwistedMatroid(m.ground, masks)


# ---------------------------------------------------------------------------
# axiom verification


@dataclasses.dataclass(frozen=True)
class TwistedAxiomReport:
    t1: bool
    t2: bool
    t3_prime: bool
    detail: str | None = None

    @property
    def all_ok(self) -> bool:
        return self.t1 and self.t2 and self.t3_prime


def verify_twisted_axioms(w: TwistedMatroid) -> TwistedAxiomReport:
    """Check the empty-set, symmetric-exchange, and small-set balancing
    axioms on an explicit family.  Balancing is checked on sets of size
    at most two, which is equivalent to the unrestricted version."""
    fam = w.feasible_masks
    detail = None
    t1 = 0 in fam

    t2 = True
    masks = sorted(fam)
    for f1 in masks:
        for f2 in masks:
            diff = f1 ^ f2
            m = diff
            while m and t2:
                e = m & -m
                mm = diff
                found = False
                while mm:
                    f = mm & -mm
                    if f1 ^ (e | f) in fam:
                        found = True
                        break
                    mm ^= f
                if not found:
                    t2 = False
                    detail = f"exchange fails for {f1:#x}, {f2:#x}, element bit {e:#x}"
                m ^= e
            if not t2:
                break
        if not t2:
            break

    t3 = True
    if any(mask.bit_count() == 1 for mask in fam):
        t3 = False
        detail = detail or "a singleton is feasible"
    else:
        try:
            w._colourings()
        except AxiomError:
            t3 = False
            detail = detail or "pair graph has an odd cycle"
    return TwistedAxiomReport(t1, t2, t3, detail)


# ---------------------------------------------------------------------------
# pivots


PRESENT = "present"
ABSENT = "absent"
UNDETERMINED = "undetermined"


@dataclasses.dataclass(frozen=True)
class PartialGraph:
    """Adjacency prediction after a pivot; pairs inside induced 4-cycles
    through the pivot edge cannot be determined from the graph alone."""

    ground: GroundSet
    states: dict[tuple[str, str], str]

    def state(self, x: str, y: str) -> str:
        key = (x, y) if self.ground.index(x) < self.ground.index(y) else (y, x)
        return self.states[key]

    def determined_edges(self) -> list[tuple[str, str]]:
        return sorted(k for k, v in self.states.items() if v == PRESENT)

    def undetermined_pairs(self) -> list[tuple[str, str]]:
        return sorted(k for k, v in self.states.items() if v == UNDETERMINED)


def pivot_predict(graph: FundamentalGraphView, u: str, v: str) -> PartialGraph:
    """Predict the fundamental graph after pivoting on the edge uv.

    Rules applied, in order: the pivot pair swaps neighbourhoods (with
    the pair itself toggled); vertices away from both neighbourhoods keep
    theirs; cross pairs without an edge become edges; cross pairs already
    joined by an edge sit on an induced 4-cycle and stay undetermined.
    """
    g = graph.ground
    ui, vi = g.index(u), g.index(v)
    adj = graph.adjacency
    if not adj[ui] >> vi & 1:
        raise PreconditionError(f"{u!r}{v!r} is not an edge")
    nu, nv = adj[ui], adj[vi]
    states: dict[tuple[str, str], str] = {}
    n = len(g)
    for i in range(n):
        for j in range(i + 1, n):
            key = (g.labels[i], g.labels[j])
            pair = 1 << i | 1 << j
            if pair == 1 << ui | 1 << vi:
                states[key] = PRESENT
                continue
            if i == ui or j == ui:
                other = j if i == ui else i
                states[key] = PRESENT if nv >> other & 1 else ABSENT
                continue
            if i == vi or j == vi:
                other = j if i == vi else i
                states[key] = PRESENT if nu >> other & 1 else ABSENT
                continue
            both = nu | nv
            if not (both >> i & 1) or not (both >> j & 1):
                states[key] = PRESENT if adj[i] >> j & 1 else ABSENT
                continue
            same_side = (nu >> i & 1 and nu >> j & 1) or (nv >> i & 1 and nv >> j & 1)
            if same_side:
                states[key] = ABSENT
            elif adj[i] >> j & 1:
                states[key] = UNDETERMINED
            else:
                states[key] = PRESENT
    return PartialGraph(g, states)


def pivot_exact(m: Matroid, base: Subset, u: str, v: str) -> FundamentalGraphView:
    """Recompute the fundamental graph after the base exchange B ^ {u, v}."""
    graph = m.fundamental_graph(base)
    ui, vi = m.ground.index(u), m.ground.index(v)
    if not graph.adjacency[ui] >> vi & 1:
        raise PreconditionError(f"{u!r}{v!r} is not an edge of the fundamental graph")
    new_base = m.ground.from_mask(base.mask ^ (1 << ui | 1 << vi))
    return m.fundamental_graph(new_base)


def pivot_agreement(m: Matroid, base: Subset, u: str, v: str) -> bool:
    """Whether the prediction matches the exact pivot on all determined pairs."""
    predicted = pivot_predict(m.fundamental_graph(base), u, v)
    exact = pivot_exact(m, base, u, v)
    g = m.ground
    for (x, y), state in predicted.states.items():
        if state == UNDETERMINED:
            continue
        actual = exact.adjacency[g.index(x)] >> g.index(y) & 1
        if (state == PRESENT) != bool(actual):
            return False
    return True


# ---------------------------------------------------------------------------
# perfect matchings and reconstruction


def _count_perfect_matchings(adj: tuple[int, ...], mask: int, cap: int = 2) -> int:
    """Count perfect matchings of the induced subgraph, stopping at cap."""

    def rec(remaining: int) -> int:
        if remaining == 0:
            return 1
        low = remaining & -remaining
        i = low.bit_length() - 1
        total = 0
        options = adj[i] & remaining
        while options:
            bit = options & -options
            total += rec(remaining ^ low ^ bit)
            if total >= cap:
                return total
            options ^= bit
        return total

    return rec(mask)


def matching_feasibility(w: TwistedMatroid, x) -> tuple[bool, bool, bool]:
    """Evaluate the matching predicates on the induced pair graph next to
    actual feasibility: feasible sets always have a perfect matching, and
    a unique perfect matching forces feasibility."""
    xmask = w._mask(x)
    graph = w.fundamental_graph()
    count = _count_perfect_matchings(graph.adjacency, xmask)
    has_pm = count >= 1
    unique_pm = count == 1
    feasible = xmask in w.feasible_masks
    if feasible and not has_pm:
        raise AxiomError("feasible set without a perfect matching")
    if unique_pm and not feasible:
        raise AxiomError("unique perfect matching on an infeasible set")
    return has_pm, unique_pm, feasible


def unique_fundamental_reconstruction(
    graph: FundamentalGraphView, base: Subset, limits: Limits = DEFAULT_LIMITS
) -> Matroid:
    """Rebuild the unique matroid with the given base whose fundamental
    graph is the given forest.

    Feasibility is read off as 'induces a perfect matching'; on forests
    each induced matching is unique, so this pins down one matroid.  The
    result is certified: the family passes the twisted axioms and the
    derived base family passes the base axioms.
    """
    n = len(graph.ground)
    guard(n, limits.enumeration, "matching family enumeration")
    edges = graph.edge_count()
    comp = len(graph.component_masks())
    if edges != n - comp:
        raise PreconditionError("fundamental graph must be a forest")
    bmask = base.mask if isinstance(base, Subset) else graph.ground.mask_of(base)
    for i in range(n):
        m = graph.adjacency[i]
        inside = bmask >> i & 1
        if inside and m & bmask:
            raise PreconditionError("two base-class vertices are adjacent")
        if not inside and m & ~bmask:
            raise PreconditionError("two non-base vertices are adjacent")
    fam = [
        mask
        for mask in range(1 << n)
        if _count_perfect_matchings(graph.adjacency, mask) >= 1
    ]
    w = TwistedMatroid(graph.ground, fam)
    report = verify_twisted_axioms(w)
    if not report.all_ok:
        raise AxiomError(f"matching family violates twisted axioms: {report.detail}")
    backend = BaseListBackend(n, [m ^ bmask for m in fam], check=True)
    return Matroid(graph.ground, backend)


def outside_twist_adjacency_check(w: TwistedMatroid, f, e: str) -> bool:
    """Feasible pairs at an element untouched by a twist survive the twist.

    Preconditions: F feasible, e outside F, and no feasible pair joins e
    to F.  Returns whether pair-feasibility at e is identical before and
    after twisting by F (always true; exposed for the test suites).
    """
    fmask = w._mask(f)
    if fmask not in w.feasible_masks:
        raise PreconditionError("F must be feasible")
    ei = w.ground.index(e)
    ebit = 1 << ei
    if fmask & ebit:
        raise PreconditionError("e must lie outside F")
    mm = fmask
    while mm:
        bit = mm & -mm
        if (ebit | bit) in w.feasible_masks:
            raise PreconditionError("e has a feasible pair into F")
        mm ^= bit
    for x in range(len(w.ground)):
        if x == ei:
            continue
        pair = ebit | 1 << x
        if (pair in w.feasible_masks) != ((pair ^ fmask) in w.feasible_masks):
            return False
    return True


# ---------------------------------------------------------------------------
# fan certificates


@dataclasses.dataclass(frozen=True)
class FanCertificate:
    """Witness that a matroid has a fan minor of the given index: a base
    whose fundamental graph carries an induced path on 2n-1 vertices
    starting and ending inside the base."""

    n: int
    base: Subset
    path: tuple[str, ...]


def validate_fan_certificate(m: Matroid, cert: FanCertificate) -> tuple[bool, str | None]:
    if cert.n < 1:
        return False, "fan index must be positive"
    if len(cert.path) != 2 * cert.n - 1:
        return False, f"path must have {2 * cert.n - 1} vertices"
    if len(set(cert.path)) != len(cert.path):
        return False, "path repeats a vertex"
    try:
        bmask = m._mask(cert.base)
    except DomainError as exc:
        return False, str(exc)
    if not m.is_base(bmask):
        return False, "certificate base is not a base"
    graph = m.fundamental_graph(m.ground.from_mask(bmask))
    if not graph.is_induced_path(cert.path):
        return False, "vertices do not form an induced path"
    for pos, lab in enumerate(cert.path):
        inside = bmask >> m.ground.index(lab) & 1
        if bool(inside) != (pos % 2 == 0):
            return False, "path does not alternate starting and ending in the base"
    return True, None


def find_fan_certificate(
    m: Matroid, n: int, limits: Limits = DEFAULT_LIMITS
) -> FanCertificate | None:
    """Exhaustive search for an induced path on 2n-1 vertices starting and
    ending in a base, over all bases.

    Bases are tried in order of decreasing fundamental-graph diameter so
    long paths are found early; absence after the loop is conclusive.
    """
    if n < 1:
        raise PreconditionError("fan index must be positive")
    target = 2 * n - 1
    if target > len(m.ground):
        return None
    ranked = []
    for base in m.bases(limits):
        graph = m.fundamental_graph(base)
        ranked.append((-graph.diameter(), base.mask, base, graph))
    ranked.sort(key=lambda t: (t[0], t[1]))
    for _, _, base, graph in ranked:
        path = _induced_path_from_class(graph, base.mask, target)
        if path is not None:
            cert = FanCertificate(n, base, path)
            ok, why = validate_fan_certificate(m, cert)
            if not ok:  # pragma: no cover
                raise AssertionError(f"search produced an invalid certificate: {why}")
            return cert
    return None


def _induced_path_from_class(
    graph: FundamentalGraphView, start_mask: int, length: int
) -> tuple[str, ...] | None:
    n = len(graph.ground)
    adj = graph.adjacency
    if length == 1:
        for i in range(n):
            if start_mask >> i & 1:
                return (graph.ground.labels[i],)
        return None

    path: list[int] = []

    def extend(banned: int) -> tuple[str, ...] | None:
        tip = path[-1]
        if len(path) == length:
            return tuple(graph.ground.labels[i] for i in path)
        options = adj[tip] & ~banned
        while options:
            bit = options & -options
            nxt = bit.bit_length() - 1
            path.append(nxt)
            # everything adjacent to the old tip is now off limits: a later
            # vertex touching it would chord the path
            out = extend(banned | adj[tip] | bit)
            if out is not None:
                return out
            path.pop()
            options ^= bit
        return None

    for i in range(n):
        if not start_mask >> i & 1:
            continue
        path = [i]
        out = extend(1 << i)
        if out is not None:
            return out
    return None
