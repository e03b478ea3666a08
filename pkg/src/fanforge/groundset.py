"""Ground sets and bitmask subsets.

Element labels are opaque strings whose order is fixed at construction;
a subset is an int bitmask over that order.  This keeps the set algebra
cheap inside the exhaustive searches and gives a stable canonical
encoding for serialization and golden tests.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import DomainError


class GroundSet:
    """Ordered, immutable universe of distinct element labels."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise DomainError("duplicate labels in ground set")
        self.labels = labels
        self._index = index

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)!r})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"element {label!r} not in ground set") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def subset(self, labels: Iterable[str]) -> "Subset":
        return Subset(self, self.mask_of(labels))

    def from_mask(self, mask: int) -> "Subset":
        if mask < 0 or mask >> len(self.labels):
            raise DomainError(f"mask {mask:#x} outside ground set of size {len(self.labels)}")
        return Subset(self, mask)

    def empty(self) -> "Subset":
        return Subset(self, 0)

    def full(self) -> "Subset":
        return Subset(self, (1 << len(self.labels)) - 1)

    def singleton(self, label: str) -> "Subset":
        return Subset(self, 1 << self.index(label))


class Subset:
    """A subset of a ground set, stored as a bitmask."""

    __slots__ = ("ground", "mask")

    def __init__(self, ground: GroundSet, mask: int):
        if mask < 0 or mask >> len(ground):
            raise DomainError("subset mask outside its ground set")
        self.ground = ground
        self.mask = mask

    def _check(self, other: "Subset") -> None:
        if self.ground != other.ground:
            raise DomainError("subsets live on different ground sets")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[str]:
        return iter(self.ground.labels_of(self.mask))

    def __contains__(self, label: str) -> bool:
        return self.mask >> self.ground.index(label) & 1 == 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subset)
            and self.ground == other.ground
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.mask))

    def __and__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.ground, self.mask & other.mask)

    def __or__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.ground, self.mask | other.mask)

    def __xor__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.ground, self.mask ^ other.mask)

    def __sub__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.ground, self.mask & ~other.mask)

    def __le__(self, other: "Subset") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __bool__(self) -> bool:
        return self.mask != 0

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"

    def complement(self) -> "Subset":
        return Subset(self.ground, self.mask ^ (1 << len(self.ground)) - 1)

    def labels(self) -> tuple[str, ...]:
        return self.ground.labels_of(self.mask)

    def isdisjoint(self, other: "Subset") -> bool:
        self._check(other)
        return self.mask & other.mask == 0
