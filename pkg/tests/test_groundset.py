import pytest
from hypothesis import given, strategies as st

from fanforge.errors import DomainError
from fanforge.groundset import GroundSet


def test_duplicate_labels_rejected():
    with pytest.raises(DomainError):
        GroundSet(["a", "a"])


def test_subset_roundtrip():
    g = GroundSet(["a", "b", "c"])
    s = g.subset(["c", "a"])
    assert s.labels() == ("a", "c")
    assert s.mask == 0b101
    assert "b" not in s and "a" in s
    assert len(s) == 2


def test_unknown_label():
    g = GroundSet(["a"])
    with pytest.raises(DomainError):
        g.subset(["b"])


def test_cross_ground_ops_rejected():
    g1, g2 = GroundSet(["a", "b"]), GroundSet(["a", "c"])
    with pytest.raises(DomainError):
        g1.subset(["a"]) | g2.subset(["a"])


@given(st.integers(0, 255), st.integers(0, 255))
def test_subset_algebra(x, y):
    g = GroundSet([f"e{i}" for i in range(8)])
    a, b = g.from_mask(x), g.from_mask(y)
    assert (a | b).mask == x | y
    assert (a & b).mask == x & y
    assert (a ^ b).mask == x ^ y
    assert (a - b).mask == x & ~y
    assert a.complement().mask == 0xFF ^ x
    assert (a <= (a | b)) and ((a & b) <= a)


@given(st.integers(0, 255))
def test_complement_involution(x):
    g = GroundSet([f"e{i}" for i in range(8)])
    s = g.from_mask(x)
    assert s.complement().complement() == s
