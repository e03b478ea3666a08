"""Capacity limits for the exhaustive desk-scale algorithms.

Every enumeration in the package is gated by one of these knobs so that
runtime stays predictable.  The defaults are deliberately conservative;
callers that know what they are doing pass a relaxed `Limits`.
"""

from __future__ import annotations

import dataclasses

from .errors import CapacityError


@dataclasses.dataclass(frozen=True)
class Limits:
    # largest ground set for full 2^n subset scans (rank / lambda tables)
    subset_scan: int = 16
    # largest ground set for base / circuit enumeration
    enumeration: int = 12
    # largest ground set for exact branch-depth / branch-width searches
    branch_search: int = 10
    # largest node degree for the sub-collection scan in node_width
    node_degree: int = 20
    # largest ground set for isomorphism search
    isomorphism: int = 10

    def relaxed(self, n: int) -> "Limits":
        """A copy with every bound at least `n`."""
        return Limits(
            subset_scan=max(self.subset_scan, n),
            enumeration=max(self.enumeration, n),
            branch_search=max(self.branch_search, n),
            node_degree=max(self.node_degree, n),
            isomorphism=max(self.isomorphism, n),
        )


DEFAULT_LIMITS = Limits()


def guard(size: int, bound: int, what: str) -> None:
    if size > bound:
        raise CapacityError(f"{what}: instance size {size} exceeds limit {bound}")
