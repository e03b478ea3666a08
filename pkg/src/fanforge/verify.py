"""Seeded property campaigns behind the `verify` subcommand.

Each suite mirrors one of the module invariant groups: it generates
instances from a seed, checks the properties, and reports violations as
strings.  The acceptance tests call these runners with their stated
instance counts; the CLI exposes them with configurable counts.
"""

from __future__ import annotations

import dataclasses
import itertools
import random

from .config import DEFAULT_LIMITS, Limits
from .decomposition import (
    branch_depth,
    branch_width,
    find_balanced_separation,
    graft_decompositions,
)
from .errors import FanforgeError, PreconditionError
from .generators import crafted_corpus, random_matroid, random_multigraph, random_tripartition
from .graphs import MultiGraph
from .groundset import GroundSet
from .lollipop import (
    Lollipop,
    bridge,
    check_star_conditions,
    extend_lollipop,
    f_value,
    fan_certificate_from_lollipop,
    find_base_lollipop,
    find_lollipop,
    find_small_circuit,
    g_value,
    induction_step,
    nest_lollipops,
    validate_lollipop,
)
from .matroids import (
    Matroid,
    connfunction_minor_bounds,
    direct_sum,
    fan_matroid,
    free_matroid,
    from_bases,
    is_isomorphic,
    uniform,
)
from .quasigraphic import (
    QuasiGraphicBackend,
    quasi_circuits,
    quasi_graphic_matroid,
    validate_tripartition,
)
from .twisted import (
    find_fan_certificate,
    matching_feasibility,
    outside_twist_adjacency_check,
    pivot_agreement,
    twist_of,
    verify_twisted_axioms,
)

SUITES = ("axioms", "connectivity", "twisted", "lollipop", "quasigraphic", "bounds")


@dataclasses.dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    checks: int = 0
    violations: list[str] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.violations.append(message)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "checks": self.checks,
            "violations": sorted(self.violations),
            "passed": self.passed,
        }


def run_suite(
    name: str, seed: int = 0, cases: int | None = None, limits: Limits = DEFAULT_LIMITS
) -> SuiteReport:
    runners = {
        "axioms": (run_axioms, 1000),
        "connectivity": (run_connectivity, 500),
        "twisted": (run_twisted, 1000),
        "lollipop": (run_lollipop, 120),
        "quasigraphic": (run_quasigraphic, 300),
        "bounds": (run_bounds, 0),
    }
    if name not in runners:
        raise PreconditionError(f"unknown suite {name!r}; pick one of {', '.join(SUITES)}")
    fn, default_cases = runners[name]
    return fn(seed, default_cases if cases is None else cases, limits)


# ---------------------------------------------------------------------------
# axioms suite


def _derive_minor_bases(m: Matroid, dmask: int, cmask: int) -> Matroid:
    """Independent re-derivation of a minor: fix a maximal independent part
    of the contracted set, test independence through the parent oracle,
    and collect the maximal survivors as a checked base list."""
    anchor = 0
    mm = cmask
    while mm:
        bit = mm & -mm
        if m.rank_mask(anchor | bit) > m.rank_mask(anchor):
            anchor |= bit
        mm ^= bit
    keep = [i for i in range(len(m.ground)) if not (dmask | cmask) >> i & 1]
    independents = []
    for bits in itertools.product((0, 1), repeat=len(keep)):
        mask = 0
        for take, i in zip(bits, keep):
            if take:
                mask |= 1 << i
        if m.rank_mask(mask | anchor) == mask.bit_count() + anchor.bit_count():
            independents.append(mask)
    top = max(x.bit_count() for x in independents)
    base_masks = [x for x in independents if x.bit_count() == top]
    labels = [m.ground.labels[i] for i in keep]
    remap = {1 << i: 1 << pos for pos, i in enumerate(keep)}
    rebased = []
    for mask in base_masks:
        out = 0
        mm = mask
        while mm:
            bit = mm & -mm
            out |= remap[bit]
            mm ^= bit
        rebased.append(out)
    return from_bases(labels, [GroundSet(labels).labels_of(x) for x in rebased], check=True)


def run_axioms(seed: int, cases: int, limits: Limits = DEFAULT_LIMITS) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("axioms", seed, cases)
    for case in range(cases):
        m = random_matroid(rng, 8, limits)
        n = len(m.ground)
        tag = f"case {case} ({m!r})"
        ranks = m.rank_table()
        lam = m.lam_table()
        full = m.full_mask
        rep.check(
            all(0 <= lam[x] <= x.bit_count() for x in range(full + 1)),
            f"{tag}: F1 fails",
        )
        rep.check(
            all(lam[x] == lam[full ^ x] for x in range(full + 1)),
            f"{tag}: F2 fails",
        )
        dual = m.dual(limits)
        rep.check(dual.lam_table() == lam, f"{tag}: lambda not self-dual")
        rep.check(dual.dual(limits).rank_table() == ranks, f"{tag}: dual involution fails")
        if n <= 6:
            pairs = itertools.combinations(range(full + 1), 2)
        else:
            pairs = ((rng.randrange(full + 1), rng.randrange(full + 1)) for _ in range(2048))
        sub_ok = f3_ok = True
        for x, y in pairs:
            if ranks[x] + ranks[y] < ranks[x & y] + ranks[x | y]:
                sub_ok = False
            if lam[x] + lam[y] < lam[x & y] + lam[x | y]:
                f3_ok = False
        rep.check(sub_ok, f"{tag}: rank submodularity fails")
        rep.check(f3_ok, f"{tag}: F3 fails")
        if n >= 2:
            dmask = rng.randrange(full + 1)
            cmask = rng.randrange(full + 1) & ~dmask
            if dmask | cmask != full:
                view = m.minor(m.ground.from_mask(dmask), m.ground.from_mask(cmask))
                derived = _derive_minor_bases(m, dmask, cmask)
                rep.check(
                    view.rank_table() == derived.rank_table(),
                    f"{tag}: minor rank formula disagrees with re-derivation",
                )
    return rep


# ---------------------------------------------------------------------------
# connectivity suite


def _relabel(m: Matroid, prefix: str) -> Matroid:
    return Matroid(GroundSet([f"{prefix}{lab}" for lab in m.ground.labels]), m.backend)


def run_connectivity(seed: int, cases: int, limits: Limits = DEFAULT_LIMITS) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("connectivity", seed, cases)

    for case in range(cases):  # both minor inequalities
        m = random_matroid(rng, 8, limits)
        if len(m.ground) < 2:
            rep.check(True, "")
            continue
        full = m.full_mask
        dmask = rng.randrange(full + 1)
        cmask = rng.randrange(full + 1) & ~dmask
        if dmask | cmask == full:
            dmask = 0
        view = m.minor(m.ground.from_mask(dmask), m.ground.from_mask(cmask))
        x = m.ground.from_mask(rng.randrange(full + 1))
        b1, b2 = connfunction_minor_bounds(m, view, x)
        rep.check(b1 and b2, f"minor bounds case {case}: ({b1}, {b2})")

    for case in range(cases):  # separation lemma
        m = random_matroid(rng, 8, limits)
        n = len(m.ground)
        if n < 4:
            m = uniform(2, 5)
            n = 5
        k = rng.choice([kk for kk in (1, 2) if 3 * kk + 1 <= n])
        size = rng.randint(3 * k + 1, n)
        zmask = 0
        for i in rng.sample(range(n), size):
            zmask |= 1 << i
        w = branch_width(m, limits).value + rng.randint(0, 1)
        x, y = find_balanced_separation(m, m.ground.from_mask(zmask), k, w, limits)
        ok = (
            m.lam_mask(x.mask) < w
            and (x.mask & zmask).bit_count() > k
            and (y.mask & zmask).bit_count() > k
            and (x.mask | y.mask) == m.full_mask
            and x.mask & y.mask == 0
        )
        rep.check(ok, f"separation case {case} violates postconditions")

    for case in range(cases):  # component dichotomy
        blocks = []
        total = 0
        for j in range(rng.randint(2, 3)):
            size = rng.randint(1, 3)
            if total + size > 8:
                break
            total += size
            blocks.append(_relabel(random_matroid(rng, size, limits), f"b{j}"))
        if len(blocks) < 2:
            blocks = [uniform(1, 2, ["p", "q"]), uniform(1, 2, ["r", "s"])]
        whole = direct_sum(*blocks, limits=limits)
        k = max(branch_depth(b, limits).value for b in blocks)
        got = branch_depth(whole, limits).value
        rep.check(got in (k, k + 1), f"dichotomy case {case}: blocks max {k}, sum {got}")

    for case in range(cases):  # graft bounds
        m = random_matroid(rng, 8, limits)
        n = len(m.ground)
        if n < 2:
            rep.check(True, "")
            continue
        full = m.full_mask
        xmask = rng.randrange(full + 1) & rng.randrange(full + 1)
        ymask = rng.randrange(full + 1) & ~xmask & rng.randrange(full + 1)
        view = m.minor(m.ground.from_mask(xmask), m.ground.from_mask(ymask))
        pieces = []
        max_width = 0
        max_radius = 0
        for comp in view.components():
            if comp.mask == 0:
                continue
            block = m.ground.subset(comp.labels())
            if len(comp) == 1:
                pieces.append((block, None))
                continue
            cert = branch_depth(view.restrict(comp), limits)
            pieces.append((block, cert.witness))
            max_width = max(max_width, cert.value)
            max_radius = max(max_radius, cert.witness.tree.radius())
        extra = m.ground.from_mask(xmask | ymask)
        if len(pieces) + len(extra) < 2:
            rep.check(True, "")
            continue
        result = graft_decompositions(m, pieces, extra, limits)
        ok = result.width <= max_width + len(extra) and result.radius <= max_radius + 1
        rep.check(ok, f"graft case {case}: width {result.width} radius {result.radius}")
    return rep


# ---------------------------------------------------------------------------
# twisted suite


def _random_base(rng: random.Random, m: Matroid, limits: Limits):
    bases = m.bases(limits)
    return rng.choice(sorted(bases, key=lambda b: b.mask))


def _has_fan_minor_brute(m: Matroid, n: int, limits: Limits) -> bool:
    target = fan_matroid(n)
    size = len(target.ground)
    ground_n = len(m.ground)
    if ground_n < size:
        return False
    for removed in itertools.combinations(range(ground_n), ground_n - size):
        rmask = 0
        for i in removed:
            rmask |= 1 << i
        for assignment in range(1 << len(removed)):
            cmask = 0
            for pos, i in enumerate(removed):
                if assignment >> pos & 1:
                    cmask |= 1 << i
            view = m.minor(m.ground.from_mask(rmask ^ cmask), m.ground.from_mask(cmask))
            if view.rank_mask(view.full_mask) != n:
                continue
            if is_isomorphic(view, target, limits) is not None:
                return True
    return False


def run_twisted(seed: int, cases: int, limits: Limits = DEFAULT_LIMITS) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("twisted", seed, cases)

    for case in range(cases):  # axioms of every twist
        m = random_matroid(rng, 8, limits)
        w = twist_of(m, _random_base(rng, m, limits), limits)
        rep.check(verify_twisted_axioms(w).all_ok, f"axioms case {case}: {m!r}")

    for case in range(max(1, cases // 8)):  # family identities, exact
        m = random_matroid(rng, 7, limits)
        w = twist_of(m, _random_base(rng, m, limits), limits)
        full = (1 << len(w.ground)) - 1
        fam = sorted(w.feasible_masks)
        f = rng.choice(fam)
        fsub = w.ground.from_mask(f)
        rep.check(w.twist(fsub).twist(fsub) == w, f"double twist case {case}")
        xmask = rng.randrange(full + 1) | f
        x = w.ground.from_mask(xmask)
        u = w.minor(fsub, x)
        inner = sorted(u.feasible_masks)
        f2_local = w.twist(fsub).restrict(x).ground.from_mask(rng.choice(inner))
        wf = w.twist(fsub)
        x2mask = rng.randrange(1 << len(u.ground))
        x2 = u.ground.from_mask(x2mask)
        left = w.twist(
            w.ground.from_mask(f ^ w.ground.mask_of(f2_local.labels()))
        ).restrict(w.ground.subset(x2.labels()))
        right = wf.restrict(x).twist(f2_local).restrict(
            wf.restrict(x).ground.subset(x2.labels())
        )
        rep.check(left == right, f"transitivity case {case}")
        proj = {b.mask & xmask for b in w.bases(limits)}
        wx_bases = {
            w.ground.mask_of(b.labels()) for b in w.restrict(x).bases(limits)
        }
        rep.check(proj <= wx_bases, f"base projection case {case}")
        if len(w.ground) - len(u.ground) <= 6:
            ok = _minor_correspondence(w, u, limits)
            rep.check(ok, f"minor correspondence case {case}")

    for case in range(cases):  # pivot prediction vs exact
        m = random_matroid(rng, 8, limits)
        base = _random_base(rng, m, limits)
        graph = m.fundamental_graph(base)
        edges = graph.edges()
        if not edges:
            rep.check(True, "")
            continue
        u, v = rng.choice(sorted(edges))
        rep.check(pivot_agreement(m, base, u, v), f"pivot case {case}: {m!r} {u}{v}")

    for case in range(max(1, cases // 12)):  # matching predicates, all subsets
        m = random_matroid(rng, 8, limits)
        w = twist_of(m, _random_base(rng, m, limits), limits)
        try:
            for mask in range(1 << len(w.ground)):
                matching_feasibility(w, mask)
            rep.check(True, "")
        except FanforgeError as exc:
            rep.check(False, f"matching case {case}: {exc}")

    for case in range(max(1, cases // 8)):  # adjacency survives outside twists
        m = random_matroid(rng, 8, limits)
        w = twist_of(m, _random_base(rng, m, limits), limits)
        fam = sorted(w.feasible_masks)
        f = rng.choice(fam)
        candidates = []
        for i in range(len(w.ground)):
            ebit = 1 << i
            if f & ebit:
                continue
            if any((ebit | (1 << j)) in w.feasible_masks and f >> j & 1 for j in range(len(w.ground))):
                continue
            candidates.append(i)
        if not candidates:
            rep.check(True, "")
            continue
        e = w.ground.labels[rng.choice(candidates)]
        rep.check(
            outside_twist_adjacency_check(w, w.ground.from_mask(f), e),
            f"outside twist case {case}",
        )

    for case in range(max(1, cases // 40)):  # fan certificate against brute force
        m = random_matroid(rng, 6, limits)
        finder = find_fan_certificate(m, 2, limits) is not None
        brute = _has_fan_minor_brute(m, 2, limits)
        rep.check(finder == brute, f"fan equivalence case {case}: {finder} vs {brute}")
    return rep


def _minor_correspondence(w, u, limits: Limits) -> bool:
    removed = [lab for lab in w.ground.labels if lab not in u.ground.labels]
    u_tables = [nm.rank_table() for nm, _ in u.associated_matroids(limits)]
    for m_assoc, _ in w.associated_matroids(limits):
        found = False
        for assignment in range(1 << len(removed)):
            cmask = 0
            dmask = 0
            for pos, lab in enumerate(removed):
                bit = 1 << m_assoc.ground.index(lab)
                if assignment >> pos & 1:
                    cmask |= bit
                else:
                    dmask |= bit
            view = m_assoc.minor(
                m_assoc.ground.from_mask(dmask), m_assoc.ground.from_mask(cmask)
            )
            if view.ground.labels != u.ground.labels:
                view = None
            if view is not None and view.rank_table() in u_tables:
                found = True
                break
        if not found:
            return False
    return True


# ---------------------------------------------------------------------------
# lollipop suite


def _path_finder_factory(limits: Limits):
    """Structural finder for path-shaped twisted matroids: joint at the
    second path vertex, candy past it; depth checked honestly."""
    from .decomposition import branch_depth_at_least

    def finder(sub, target):
        graph = sub.fundamental_graph()
        ends = [
            i for i in range(len(sub.ground)) if graph.adjacency[i].bit_count() == 1
        ]
        if len(ends) != 2:
            raise PreconditionError("not a path")
        order = [min(ends)]
        seen = 1 << order[0]
        while True:
            nxt = graph.adjacency[order[-1]] & ~seen
            if not nxt:
                break
            v = (nxt & -nxt).bit_length() - 1
            order.append(v)
            seen |= 1 << v
        labels = sub.ground.labels
        z = labels[order[1]]
        candy = [labels[i] for i in order[2:]]
        keep = sub.ground.subset([z] + candy)
        inner = sub.restrict(keep)
        lol = Lollipop(inner, inner.ground.empty(), z, inner.ground.subset(candy))
        if not branch_depth_at_least(inner.restrict(lol.candy).matroid(), target, limits):
            raise PreconditionError("candy too shallow")
        return sub.ground.empty(), lol

    return finder


def run_lollipop(seed: int, cases: int, limits: Limits = DEFAULT_LIMITS) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("lollipop", seed, cases)
    big = limits.relaxed(16)

    for case in range(cases):  # induction start on instances of depth >= 2
        m = random_matroid(rng, 8, limits)
        w = twist_of(m, _random_base(rng, m, limits), limits)
        from .decomposition import branch_depth_at_least

        if not branch_depth_at_least(w.matroid(), 2, limits):
            rep.check(True, "")
            continue
        lol = find_base_lollipop(w, 0, limits)
        ok, why = validate_lollipop(lol, 0, 0, limits)
        rep.check(ok, f"base lollipop case {case}: {why}")

    for case in range(max(1, cases // 4)):  # extension on fan sticks
        k = rng.randint(4, 6)
        fan = fan_matroid(k)
        spokes = fan.subset([f"s{i}" for i in range(1, k + 1)])
        w = twist_of(fan, spokes, big)
        cut = rng.randint(2, k - 2)
        stick = []
        for i in range(1, cut + 1):
            stick.append(f"s{i}")
            if i < cut:
                stick.append(f"p{i}")
        rest = [lab for lab in w.ground.labels if lab not in stick and lab != f"p{cut}"]
        lol = Lollipop(
            w, w.ground.subset(stick), f"p{cut}", w.ground.subset(rest)
        )
        ok, why = validate_lollipop(lol, len(stick), 0, big)
        rep.check(ok, f"fan lollipop case {case}: {why}")
        tail_start = rng.randint(cut + 2, k)
        target = []
        for i in range(tail_start, k + 1):
            target.append(f"s{i}")
            if i < k:
                target.append(f"p{i}")
        if not target:
            continue
        ext = extend_lollipop(lol, w.ground.subset(target), big)
        ok, why = validate_lollipop(ext, len(stick) + 1, 0, big)
        rep.check(ok, f"extension case {case}: {why}")

    for case in range(max(1, cases // 10)):  # nested chains on fan paths
        k = rng.randint(6, 8)
        fan = fan_matroid(k)
        spokes = fan.subset([f"s{i}" for i in range(1, k + 1)])
        w = twist_of(fan, spokes, big)
        bounds = [2, 1] if rng.random() < 0.5 else [1, 1, 0]
        try:
            chain = nest_lollipops(
                w, 0, bounds, _path_finder_factory(big), g0=2, limits=big
            )
        except FanforgeError as exc:
            rep.check(False, f"nest case {case}: {exc}")
            continue
        rep.check(len(chain.entries) == len(bounds), f"nest case {case}: wrong length")
        nested = all(
            chain.entries[i].element_set <= chain.entries[i - 1].candy
            for i in range(1, len(chain.entries))
        )
        rep.check(nested, f"nest case {case}: nesting fails")

    for case in range(max(1, cases // 6)):  # bridge on crafted sums
        deep = uniform(2, 4, ["c1", "c2", "c3", "c4"])
        zn = rng.randint(4, 6)
        coloops = free_matroid([f"z{i}" for i in range(zn)])
        m = direct_sum(deep, coloops, limits=limits)
        w = twist_of(m, _random_base(rng, m, limits), limits)
        z = w.ground.subset([f"z{i}" for i in range(zn)])
        c = w.ground.subset(["c1", "c2", "c3", "c4"])
        try:
            x, y = bridge(w, z, c, 1, 0, 3, limits)
        except FanforgeError as exc:
            rep.check(False, f"bridge case {case}: {exc}")
            continue
        rep.check(len(x) >= 2 and y.mask and x.mask & ~z.mask == 0, f"bridge case {case}")

    for case in range(max(1, cases // 4)):  # small circuits
        m = random_matroid(rng, 7, limits)
        if len(m.ground) < 3 or m.rank_mask(m.full_mask) == 0:
            rep.check(True, "")
            continue
        w = twist_of(m, _random_base(rng, m, limits), limits)
        x = w.ground.full()
        try:
            base, circuit = find_small_circuit(w, x, 3, limits)
        except PreconditionError:
            rep.check(True, "")
            continue
        contracted = w.matroid(base).contract(base & x)
        omask = contracted.ground.mask_of(circuit.labels())
        is_circuit = contracted.rank_mask(omask) == len(circuit) - 1 and all(
            contracted.rank_mask(omask ^ (1 << contracted.ground.index(lab)))
            == len(circuit) - 1
            for lab in circuit.labels()
        )
        rep.check(
            bool(circuit.mask) and len(circuit) <= 3 and circuit.mask & base.mask == 0 and is_circuit,
            f"small circuit case {case}",
        )

    # the composed search: level 0 end to end, level 1 fails its depth gate
    u24 = uniform(2, 4)
    w24 = twist_of(u24, u24.subset(["1", "2"]))
    lol0 = find_lollipop(w24, 0, 0, 3, limits)
    ok, why = validate_lollipop(lol0, 0, 0, limits)
    rep.check(ok, f"find_lollipop a=0: {why}")
    try:
        find_lollipop(w24, 1, 0, 3, limits)
        rep.check(False, "find_lollipop a=1 should hit the depth gate")
    except PreconditionError as exc:
        rep.check(f"{f_value(3, 1, 0)}" in str(exc), "a=1 gate names the threshold")

    # induction step gates
    fan = fan_matroid(6)
    wfan = twist_of(fan, fan.subset([f"s{i}" for i in range(1, 7)]), big)
    chain = nest_lollipops(wfan, 0, [1, 1], _path_finder_factory(big), g0=2, limits=big)
    try:
        induction_step(wfan, chain, 0, 2, limits)
        rep.check(False, "w=2 must be rejected")
    except PreconditionError:
        rep.check(True, "")
    try:
        induction_step(wfan, chain, 0, 3, limits)
        rep.check(False, "short chain must be rejected")
    except PreconditionError:
        rep.check(True, "")

    # star-condition checker on a hand-built positive and negative instance
    ok, why = check_star_conditions(
        chain, 1, chain.entries[1].candy, wfan.ground.empty(), 0, big
    )
    rep.check(ok, f"star checker positive: {why}")
    bad_candy = wfan.ground.subset(chain.entries[0].candy.labels()[:1])
    ok2, _ = check_star_conditions(chain, 2, bad_candy, wfan.ground.empty(), 0, big)
    rep.check(not ok2, "star checker must reject a candy outside the last level")

    # stick-to-fan conversion
    from .twisted import validate_fan_certificate

    for n in (2, 3):
        k = 2 * n + 1
        fan = fan_matroid(k)
        spokes = fan.subset([f"s{i}" for i in range(1, k + 1)])
        w = twist_of(fan, spokes, big)
        lol = _fan_stick_lollipop(w, 2 * n)
        cert = fan_certificate_from_lollipop(fan, spokes, lol, n, big)
        okc, whyc = validate_fan_certificate(fan, cert)
        rep.check(okc, f"stick conversion n={n}: {whyc}")
    return rep


def _fan_stick_lollipop(w, stick_len: int) -> Lollipop:
    """Lollipop along a path-shaped twisted matroid with the given stick
    length; joint right after the stick, candy holds the remainder."""
    graph = w.fundamental_graph()
    ends = [i for i in range(len(w.ground)) if graph.adjacency[i].bit_count() == 1]
    order = [min(ends)]
    seen = 1 << order[0]
    while True:
        nxt = graph.adjacency[order[-1]] & ~seen
        if not nxt:
            break
        v = (nxt & -nxt).bit_length() - 1
        order.append(v)
        seen |= 1 << v
    labels = w.ground.labels
    stick = [labels[i] for i in order[:stick_len]]
    z = labels[order[stick_len]]
    candy = [labels[i] for i in order[stick_len + 1 :]]
    return Lollipop(w, w.ground.subset(stick), z, w.ground.subset(candy))


# ---------------------------------------------------------------------------
# quasi-graphic suite


def _circuit_axioms(circuits: list[frozenset[str]]) -> str | None:
    cset = set(circuits)
    if frozenset() in cset:
        return "empty circuit"
    for c1 in circuits:
        for c2 in circuits:
            if c1 != c2 and c1 <= c2:
                return "containment between circuits"
    for c1 in circuits:
        for c2 in circuits:
            if c1 == c2:
                continue
            for e in c1 & c2:
                merged = (c1 | c2) - {e}
                if not any(c3 <= merged for c3 in circuits):
                    return f"weak elimination fails at {sorted(c1)}, {sorted(c2)}, {e}"
    return None


def run_quasigraphic(seed: int, cases: int, limits: Limits = DEFAULT_LIMITS) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("quasigraphic", seed, cases)
    for case in range(cases):
        graph = random_multigraph(rng, 8)
        part = random_tripartition(rng, graph, limits)
        ok, why = validate_tripartition(
            graph, part.balanced, part.l_class, part.f_class, limits
        )
        rep.check(ok, f"case {case}: generator produced improper partition: {why}")
        circuits = quasi_circuits(part, limits)
        why = _circuit_axioms(circuits)
        rep.check(why is None, f"case {case}: circuit axioms: {why}")
        backend = QuasiGraphicBackend(part)
        n = len(graph.labels)
        index = {lab: i for i, lab in enumerate(graph.labels)}
        circuit_masks = [
            sum(1 << index[lab] for lab in c) for c in circuits
        ]
        derived = [0] * (1 << n)
        for mask in range(1, 1 << n):
            if any(cm & mask == cm for cm in circuit_masks):
                derived[mask] = max(
                    derived[mask & ~(1 << i)] for i in range(n) if mask >> i & 1
                )
            else:
                derived[mask] = mask.bit_count()
        agreement = all(backend.rank(mask) == derived[mask] for mask in range(1 << n))
        rep.check(agreement, f"case {case}: rank formula disagrees with circuits")
        if not part.l_class and not part.f_class:
            from .matroids import graphic_matroid

            cyc = graphic_matroid(graph)
            rep.check(
                all(backend.rank(mask) == cyc.rank_mask(mask) for mask in range(1 << n)),
                f"case {case}: graphic specialization fails",
            )
        from .quasigraphic import branch_width_bound_check

        bw_g, bw_m, holds = branch_width_bound_check(part, limits)
        rep.check(holds, f"case {case}: branch-width bound {bw_m} > {bw_g} + 3")
    return rep


# ---------------------------------------------------------------------------
# bound arithmetic suite


def run_bounds(seed: int, cases: int, limits: Limits = DEFAULT_LIMITS) -> SuiteReport:
    rep = SuiteReport("bounds", seed, cases)
    for w in range(2, 7):
        ell = 3 * w - 2
        for b in range(0, 11):
            rep.check(f_value(w, 0, b) == b + 2, f"f_{w}(0,{b}) != {b}+2")
            for a in range(0, 5):
                rep.check(
                    g_value(a, b, w, ell) == b + 2 * w - 1,
                    f"g({a},{b},{w},{ell}) != b+2w-1",
                )
                rep.check(
                    f_value(w, a, b) <= b + 3 * (3 * w - 2) ** a,
                    f"f_{w}({a},{b}) exceeds b+3(3w-2)^{a}",
                )
                for i in range(0, ell):
                    rep.check(
                        g_value(a + 1, b, w, i)
                        == f_value(w, a, g_value(a + 1, b, w, i + 1)),
                        f"recursion identity fails at ({a + 1},{b},{w},{i})",
                    )
    return rep
