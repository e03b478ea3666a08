"""Seeded random instance generators for the verification campaigns.

All randomness flows through one `random.Random` so identical seeds give
identical campaigns.  The matroid generator covers every backend and
mixes in duals, minors, and direct sums for structural variety.
"""

from __future__ import annotations

import random
from collections.abc import Iterable

from .config import DEFAULT_LIMITS, Limits
from .graphs import MultiGraph, cycles_of
from .matroids import (
    Matroid,
    direct_sum,
    from_bases,
    graphic_matroid,
    linear_matroid,
    uniform,
)
from .quasigraphic import ProperTripartition, quasi_graphic_matroid, validate_tripartition

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _labels(n: int, prefix: str = "") -> list[str]:
    if not prefix and n <= len(_ALPHABET):
        return list(_ALPHABET[:n])
    return [f"{prefix}e{i}" for i in range(n)]


def random_multigraph(
    rng: random.Random,
    max_edges: int = 8,
    *,
    allow_loops: bool = True,
    connected: bool = False,
) -> MultiGraph:
    m = rng.randint(1, max_edges)
    nv = rng.randint(1, max(1, min(m, 6)))
    vertices = list(range(nv))
    edges = []
    for i in range(m):
        if connected and i < nv - 1:
            u, v = i + 1, rng.randrange(i + 1)  # spanning-tree skeleton
        else:
            u = rng.randrange(nv)
            v = rng.randrange(nv)
            if u == v and not allow_loops:
                v = (u + 1) % nv if nv > 1 else u
        edges.append((min(u, v), max(u, v), f"e{i}"))
    return MultiGraph(vertices, edges)


def random_tripartition(
    rng: random.Random, graph: MultiGraph, limits: Limits = DEFAULT_LIMITS
) -> ProperTripartition:
    """A random proper tripartition: a theta-closed balanced class, then a
    random L/F split with an all-F fallback, which is always proper."""
    cycles = set(cycles_of(graph))
    balanced = {c for c in cycles if rng.random() < 0.4}
    changed = True
    while changed:
        changed = False
        for c1 in list(balanced):
            for c2 in list(balanced):
                sym = c1 ^ c2
                if sym in cycles and sym not in balanced:
                    balanced.add(sym)
                    changed = True
    rest = sorted(cycles - balanced, key=sorted)
    l_class = {c for c in rest if rng.random() < 0.3}
    f_class = set(rest) - l_class
    ok, _ = validate_tripartition(graph, balanced, l_class, f_class, limits)
    if not ok:
        l_class, f_class = set(), set(rest)
    return ProperTripartition(
        graph,
        frozenset(balanced),
        frozenset(l_class),
        frozenset(f_class),
    )


def _base_matroid(rng: random.Random, n: int, limits: Limits) -> Matroid:
    kind = rng.choice(["uniform", "graphic", "linear", "bases", "quasigraphic"])
    if kind == "uniform":
        return uniform(rng.randint(0, n), n, _labels(n))
    if kind == "graphic":
        g = random_multigraph(rng, n)
        return graphic_matroid(g)
    if kind == "linear":
        q = rng.choice([2, 3, 5, 7])
        rows = rng.randint(1, max(2, n // 2 + 1))
        cols = {
            lab: [rng.randrange(q) for _ in range(rows)] for lab in _labels(n)
        }
        return linear_matroid(q, cols)
    if kind == "quasigraphic":
        g = random_multigraph(rng, n)
        return quasi_graphic_matroid(random_tripartition(rng, g, limits))
    inner = uniform(rng.randint(0, max(1, n - 1)), max(1, n - 1), _labels(max(1, n - 1)))
    if rng.random() < 0.5:
        g = random_multigraph(rng, max(1, n - 1))
        inner = graphic_matroid(g)
    return from_bases(
        inner.ground.labels, [b.labels() for b in inner.bases(limits)], check=True
    )


def random_matroid(
    rng: random.Random, max_n: int = 8, limits: Limits = DEFAULT_LIMITS
) -> Matroid:
    """A random matroid on at most max_n elements, drawn across all
    backends, possibly dualized, cut down to a minor, or direct-summed."""
    n = rng.randint(1, max_n)
    m = _base_matroid(rng, n, limits)
    if rng.random() < 0.25:
        m = m.dual(limits)
    if rng.random() < 0.3 and len(m.ground) >= 2:
        full = m.full_mask
        dmask = cmask = 0
        for i in range(len(m.ground)):
            roll = rng.random()
            if roll < 0.15:
                dmask |= 1 << i
            elif roll < 0.3:
                cmask |= 1 << i
        if (dmask | cmask) != full and (dmask | cmask):
            m = m.minor(m.ground.from_mask(dmask), m.ground.from_mask(cmask))
    if rng.random() < 0.15 and len(m.ground) + 2 <= max_n:
        k = rng.randint(1, 2)
        other = uniform(rng.randint(0, k), k, [f"x{i}" for i in range(k)])
        try:
            m = direct_sum(m, other, limits=limits)
        except Exception:
            pass
    return m


def matroid_corpus(
    seed: int, count: int, max_n: int = 8, limits: Limits = DEFAULT_LIMITS
) -> list[Matroid]:
    rng = random.Random(seed)
    return [random_matroid(rng, max_n, limits) for _ in range(count)]


def crafted_corpus(max_n: int = 8) -> list[Matroid]:
    """Deterministic structured instances that random draws tend to miss."""
    from .matroids import fan_matroid, free_matroid, triangle_matroid

    out: list[Matroid] = [
        free_matroid(["a"]),
        free_matroid(list("abc")),
        uniform(0, 3),
        uniform(1, 3),
        uniform(2, 4),
        uniform(3, 6),
        triangle_matroid(),
        triangle_matroid().dual(),
        fan_matroid(2),
        fan_matroid(3),
        graphic_matroid(MultiGraph([0, 1], [(0, 1, "a"), (0, 1, "b")])),
        graphic_matroid(MultiGraph([0], [(0, 0, "a")])),
        direct_sum(triangle_matroid(), uniform(1, 2, ["x", "y"])),
    ]
    if max_n >= 7:
        out.append(fan_matroid(4))
        out.append(uniform(2, 6))
        out.append(fan_matroid(3).dual())
    return [m for m in out if len(m.ground) <= max_n]
