import itertools
import random

import pytest

import fanforge as ff
from fanforge.errors import AxiomError, CapacityError, PreconditionError
from fanforge.generators import crafted_corpus, matroid_corpus
from fanforge.graphs import MultiGraph
from fanforge.matroids import connfunction_minor_bounds


K3 = ff.triangle_matroid()
U24 = ff.uniform(2, 4)


def brute_components(m):
    """Minimal non-empty zero-connectivity sets, straight from the definition."""
    n = len(m.ground)
    zero = [x for x in range(1, 1 << n) if m.lam_mask(x) == 0]
    minimal = [
        x for x in zero if not any(y != x and y & x == y for y in zero)
    ]
    return sorted(minimal)


# -- rank oracle ----------------------------------------------------------------


def test_rank_examples():
    assert U24.rank([]) == 0
    assert U24.rank(["1", "2", "3"]) == 2
    assert K3.rank(["a", "b", "c"]) == 2


def test_rank_domain_error():
    with pytest.raises(ff.DomainError):
        K3.rank(["nope"])


def test_bases_circuits_examples():
    assert sorted(c.labels() for c in U24.circuits()) == [
        ("1", "2", "3"),
        ("1", "2", "4"),
        ("1", "3", "4"),
        ("2", "3", "4"),
    ]
    assert [c.labels() for c in K3.circuits()] == [("a", "b", "c")]
    assert sorted(b.labels() for b in K3.bases()) == [("a", "b"), ("a", "c"), ("b", "c")]


def test_base_axiom_checking():
    with pytest.raises(AxiomError):
        ff.from_bases(["a", "b"], [])
    with pytest.raises(AxiomError):
        ff.from_bases(["a", "b"], [["a"], ["a", "b"]])
    with pytest.raises(AxiomError):
        # exchange fails: {a,b} and {c,d} cannot trade one element
        ff.from_bases(["a", "b", "c", "d"], [["a", "b"], ["c", "d"]])


def test_enumeration_capacity():
    big = ff.uniform(3, 14)
    with pytest.raises(CapacityError):
        big.bases()
    assert len(big.bases(ff.Limits().relaxed(14))) == 364


def test_fundamental_circuit_examples():
    assert K3.fundamental_circuit("c", K3.subset(["a", "b"])).labels() == ("a", "b", "c")
    assert U24.fundamental_circuit("3", U24.subset(["1", "2"])).labels() == ("1", "2", "3")
    f3 = ff.fan_matroid(3)
    got = f3.fundamental_circuit("p1", f3.subset(["s1", "s2", "s3"]))
    assert got.labels() == ("s1", "s2", "p1")
    with pytest.raises(PreconditionError):
        K3.fundamental_circuit("a", K3.subset(["a", "b"]))
    with pytest.raises(PreconditionError):
        K3.fundamental_circuit("c", K3.subset(["a"]))


# -- duality and minors -----------------------------------------------------------


def test_dual_examples():
    d = U24.dual()
    assert d.rank_table() == U24.rank_table()  # self-dual
    free1 = ff.free_matroid(["a"])
    assert [b.labels() for b in free1.dual().bases()] == [()]
    assert K3.dual().rank(["a"]) == 1


def test_dual_involution_corpus():
    for m in crafted_corpus():
        assert m.dual().dual().rank_table() == m.rank_table()


def test_minor_examples():
    m = K3.minor(0, 0)
    assert m.rank_table() == K3.rank_table()
    u13 = U24.minor(0, U24.subset(["1"]))
    assert u13.rank(["2", "3"]) == 1
    assert ff.is_isomorphic(u13, ff.uniform(1, 3, ["x", "y", "z"])) is not None
    free2 = K3.minor(K3.subset(["c"]), 0)
    assert free2.rank(["a", "b"]) == 2


def test_minor_overlap_rejected():
    with pytest.raises(PreconditionError):
        K3.minor(K3.subset(["a"]), K3.subset(["a"]))


def test_flatten_composes():
    m = ff.uniform(3, 7)
    v1 = m.minor(m.subset(["1"]), m.subset(["2"]))
    v2 = v1.minor(v1.subset(["3"]), v1.subset(["4"]))
    flat = v2.flatten()
    assert flat.ground.labels == v2.ground.labels
    assert flat.rank_table() == v2.rank_table()
    assert flat.backend.parent is m


# -- connectivity -------------------------------------------------------------------


def test_lambda_examples():
    assert K3.lam([]) == 0
    assert U24.lam(["1", "2"]) == 2
    assert K3.lam(["a"]) == 1


def test_components_examples():
    assert [c.labels() for c in K3.components()] == [("a", "b", "c")]
    two = ff.direct_sum(K3, ff.uniform(2, 3, ["x", "y", "z"]))
    blocks = sorted(c.labels() for c in two.components())
    assert blocks == [("a", "b", "c"), ("x", "y", "z")]
    free = ff.free_matroid(["a", "b"])
    assert sorted(c.labels() for c in free.components()) == [("a",), ("b",)]


def test_components_empty_matroid():
    empty = ff.free_matroid([])
    comps = empty.components()
    assert len(comps) == 1 and len(comps[0]) == 0


def test_components_match_brute_force():
    for m in crafted_corpus() + matroid_corpus(11, 40):
        if len(m.ground) == 0:
            continue
        got = sorted(c.mask for c in m.components())
        assert got == brute_components(m), repr(m)


def test_fundamental_graph_examples():
    g = K3.fundamental_graph(K3.subset(["a", "b"]))
    assert g.edges() == [("a", "c"), ("b", "c")]
    f5 = ff.fan_matroid(5)
    spokes = f5.subset([f"s{i}" for i in range(1, 6)])
    gf = f5.fundamental_graph(spokes)
    path = ["s1", "p1", "s2", "p2", "s3", "p3", "s4", "p4", "s5"]
    assert gf.is_induced_path(path)
    gu = U24.fundamental_graph(U24.subset(["1", "2"]))
    assert len(gu.edges()) == 4  # complete bipartite on {1,2} x {3,4}
    assert {frozenset(e) for e in gu.edges()} == {
        frozenset(x) for x in (("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"))
    }


def test_fundamental_graph_dual_equality():
    for m in crafted_corpus():
        if len(m.ground) == 0:
            continue
        b = m.greedy_base()
        g1 = m.fundamental_graph(b)
        g2 = m.dual().fundamental_graph(b.complement())
        assert g1.adjacency == g2.adjacency, repr(m)


def test_connfunction_minor_bounds_examples():
    n = K3.minor(K3.subset(["c"]), 0)
    assert connfunction_minor_bounds(K3, n, K3.subset(["a"])) == (True, True)
    ident = K3.minor(0, 0)
    assert connfunction_minor_bounds(K3, ident, K3.subset(["a", "b"])) == (True, True)
    n2 = U24.minor(0, U24.subset(["1"]))
    assert connfunction_minor_bounds(U24, n2, U24.subset(["2"])) == (True, True)


def test_connfunction_minor_bounds_random():
    rng = random.Random(5)
    for m in matroid_corpus(7, 120):
        if len(m.ground) < 2:
            continue
        full = m.full_mask
        dmask = rng.randrange(full + 1)
        cmask = rng.randrange(full + 1) & ~dmask
        if dmask | cmask == full:
            continue
        view = m.minor(m.ground.from_mask(dmask), m.ground.from_mask(cmask))
        x = m.ground.from_mask(rng.randrange(full + 1))
        assert connfunction_minor_bounds(m, view, x) == (True, True)


# -- isomorphism ----------------------------------------------------------------------


def test_isomorphism_examples():
    assert ff.is_isomorphic(K3, ff.uniform(2, 3)) is not None
    assert ff.is_isomorphic(K3, ff.uniform(1, 3)) is None
    assert ff.is_isomorphic(ff.fan_matroid(2), K3) is not None


def test_isomorphism_maps_bases():
    m1 = ff.fan_matroid(3)
    m2 = ff.graphic_matroid(
        MultiGraph(
            [0, 1, 2, 3],
            [(1, 2, "x1"), (0, 3, "x2"), (0, 1, "x3"), (0, 2, "x4"), (2, 3, "x5")],
        )
    )
    phi = ff.is_isomorphic(m1, m2)
    assert phi is not None
    bases2 = {frozenset(b.labels()) for b in m2.bases()}
    for b in m1.bases():
        assert frozenset(phi[lab] for lab in b.labels()) in bases2


def test_isomorphism_capacity():
    with pytest.raises(CapacityError):
        ff.is_isomorphic(ff.uniform(2, 11), ff.uniform(2, 11))


# -- concrete families ------------------------------------------------------------------


def test_fan_matroid_shape():
    f1 = ff.fan_matroid(1)
    assert f1.ground.labels == ("s1",) and f1.rank(["s1"]) == 1
    f7 = ff.fan_matroid(7)
    assert len(f7.ground) == 13
    assert f7.rank(f7.ground.full()) == 7


def test_uniform_validation():
    with pytest.raises(ff.DomainError):
        ff.uniform(5, 3)


# -- axiom properties over the corpus ------------------------------------------------------


def test_rank_axioms_exhaustive_small():
    for m in crafted_corpus(max_n=8):
        n = len(m.ground)
        ranks = m.rank_table()
        full = m.full_mask
        for x in range(full + 1):
            assert 0 <= ranks[x] <= x.bit_count()
        for x, y in itertools.combinations(range(full + 1), 2):
            assert ranks[x] + ranks[y] >= ranks[x & y] + ranks[x | y], repr(m)
        lam = m.lam_table()
        for x in range(full + 1):
            assert 0 <= lam[x] <= x.bit_count()
            assert lam[x] == lam[full ^ x]
        if n <= 6:
            for x, y in itertools.combinations(range(full + 1), 2):
                assert lam[x] + lam[y] >= lam[x & y] + lam[x | y], repr(m)


def test_lambda_self_dual():
    for m in crafted_corpus():
        assert m.dual().lam_table() == m.lam_table(), repr(m)


def test_minor_view_matches_reconstruction():
    rng = random.Random(3)
    for m in matroid_corpus(13, 30):
        n = len(m.ground)
        if n < 2:
            continue
        full = m.full_mask
        dmask = rng.randrange(full + 1)
        cmask = rng.randrange(full + 1) & ~dmask
        if dmask | cmask == full:
            continue
        view = m.minor(m.ground.from_mask(dmask), m.ground.from_mask(cmask))
        from fanforge.verify import _derive_minor_bases

        derived = _derive_minor_bases(m, dmask, cmask)
        assert view.rank_table() == derived.rank_table(), repr(m)
