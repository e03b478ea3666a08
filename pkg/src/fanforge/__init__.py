"""fanforge: exact matroid decomposition toolkit.

Connectivity functions, branch-width and branch-depth with witness
decompositions, twisted-matroid calculus, fan-minor extraction, and
quasi-graphic matroids, all verified at desk scale.
"""

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    AxiomError,
    CapacityError,
    DomainError,
    FanforgeError,
    PreconditionError,
    ValidationError,
)
from .groundset import GroundSet, Subset
from .graphs import MultiGraph, fan_graph, looped_path_graph, triangle_graph
from .matroids import (
    FundamentalGraphView,
    Matroid,
    connfunction_minor_bounds,
    direct_sum,
    fan_matroid,
    free_matroid,
    from_bases,
    graphic_matroid,
    is_isomorphic,
    linear_matroid,
    triangle_matroid,
    uniform,
)

__version__ = "0.1.0"
