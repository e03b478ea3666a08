"""JSON and DOT interchange.

The matroid file format is a ground-set label list plus a typed backend
record; certificates and witnesses embed their matroids so validators
can replay them standalone.
"""

from __future__ import annotations

import json
from typing import Any

from .config import DEFAULT_LIMITS, Limits
from .errors import DomainError
from .graphs import MultiGraph
from .groundset import Subset
from .lollipop import Lollipop, NestedLollipopChain
from .matroids import (
    BaseListBackend,
    FundamentalGraphView,
    GraphicBackend,
    LinearBackend,
    Matroid,
    UniformBackend,
    from_bases,
    graphic_matroid,
    linear_matroid,
    uniform,
)
from .quasigraphic import QuasiGraphicBackend, quasi_graphic_matroid, tripartition
from .twisted import FanCertificate, TwistedMatroid, validate_fan_certificate


def _graph_to_json(graph: MultiGraph) -> dict:
    vindex = {v: i for i, v in enumerate(graph.vertices)}
    return {
        "vertices": len(graph.vertices),
        "edges": [[vindex[u], vindex[v], lab] for u, v, lab in graph.edges],
    }


def _graph_from_json(data: dict) -> MultiGraph:
    n = int(data["vertices"])
    edges = [(int(u), int(v), str(lab)) for u, v, lab in data["edges"]]
    return MultiGraph(range(n), edges)


def matroid_to_json(m: Matroid, limits: Limits = DEFAULT_LIMITS) -> dict:
    ground = list(m.ground.labels)
    be = m.backend
    if isinstance(be, UniformBackend):
        backend: dict[str, Any] = {"type": "uniform", "r": be.r}
    elif isinstance(be, GraphicBackend):
        backend = {"type": "graphic", **_graph_to_json(be.graph)}
    elif isinstance(be, LinearBackend):
        backend = {
            "type": "linear",
            "q": be.q,
            "columns": {lab: list(col) for lab, col in zip(ground, be.columns)},
        }
    elif isinstance(be, QuasiGraphicBackend):
        part = be.part
        backend = {
            "type": "quasigraphic",
            "graph": _graph_to_json(part.graph),
            "balanced": sorted(sorted(c) for c in part.balanced),
            "L": sorted(sorted(c) for c in part.l_class),
            "F": sorted(sorted(c) for c in part.f_class),
        }
    elif isinstance(be, BaseListBackend):
        backend = {
            "type": "bases",
            "bases": sorted(sorted(b.labels()) for b in m.bases(limits)),
        }
    else:
        # minor views and anything else are materialized
        backend = {
            "type": "bases",
            "bases": sorted(sorted(b.labels()) for b in m.bases(limits)),
        }
    return {"ground": ground, "backend": backend}


def matroid_from_json(data: dict, limits: Limits = DEFAULT_LIMITS) -> Matroid:
    try:
        ground = [str(x) for x in data["ground"]]
        backend = data["backend"]
        kind = backend["type"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed matroid record: {exc}") from exc
    if kind == "uniform":
        return uniform(int(backend["r"]), len(ground), ground)
    if kind == "bases":
        return from_bases(ground, [list(map(str, b)) for b in backend["bases"]])
    if kind == "graphic":
        graph = _graph_from_json(backend)
        if list(graph.labels) != ground:
            raise DomainError("edge labels disagree with the ground list")
        return graphic_matroid(graph)
    if kind == "linear":
        cols = {str(lab): [int(x) for x in col] for lab, col in backend["columns"].items()}
        if sorted(cols) != sorted(ground):
            raise DomainError("column labels disagree with the ground list")
        return linear_matroid(int(backend["q"]), {lab: cols[lab] for lab in ground})
    if kind == "quasigraphic":
        graph = _graph_from_json(backend["graph"])
        part = tripartition(
            graph, backend.get("balanced", []), backend.get("L", []), backend.get("F", []), limits
        )
        return quasi_graphic_matroid(part)
    raise DomainError(f"unknown backend type {kind!r}")


def load_matroid(path: str, limits: Limits = DEFAULT_LIMITS) -> Matroid:
    with open(path) as fh:
        return matroid_from_json(json.load(fh), limits)


# ---------------------------------------------------------------------------
# twisted matroids, certificates, witnesses


def twisted_to_json(w: TwistedMatroid) -> dict:
    return {
        "ground": list(w.ground.labels),
        "feasible": sorted(sorted(s.labels()) for s in w.feasible_subsets()),
    }


def fan_certificate_to_json(cert: FanCertificate) -> dict:
    return {
        "n": cert.n,
        "base": sorted(cert.base.labels()),
        "path": list(cert.path),
    }


def fan_certificate_from_json(m: Matroid, data: dict) -> FanCertificate:
    return FanCertificate(
        int(data["n"]),
        m.ground.subset(map(str, data["base"])),
        tuple(str(x) for x in data["path"]),
    )


def lollipop_to_json(lol: Lollipop) -> dict:
    return {
        "twisted": twisted_to_json(lol.twisted),
        "stick": sorted(lol.stick.labels()),
        "z": lol.z,
        "candy": sorted(lol.candy.labels()),
    }


def chain_to_json(chain: NestedLollipopChain) -> dict:
    return {
        "twist": sorted(chain.f.labels()),
        "stick_bound": chain.stick_bound,
        "depth_bounds": list(chain.depth_bounds),
        "levels": [
            {
                "elements": sorted(e.element_set.labels()),
                "stick": sorted(e.stick.labels()),
                "z": e.z,
                "candy": sorted(e.candy.labels()),
            }
            for e in chain.entries
        ],
    }


def fundamental_graph_to_dot(view: FundamentalGraphView) -> str:
    lines = ["graph fundamental {"]
    inside = [lab for lab in view.ground.labels if lab in view.colour_class_b]
    outside = [lab for lab in view.ground.labels if lab not in view.colour_class_b]
    lines.append("  { rank=same; " + " ".join(f'"{lab}"' for lab in inside) + " }")
    lines.append("  { rank=same; " + " ".join(f'"{lab}"' for lab in outside) + " }")
    for lab in inside:
        lines.append(f'  "{lab}" [shape=box];')
    for u, v in view.edges():
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# certificate bundles


def make_fan_bundle(
    m: Matroid, n: int, strategy: str, cert: FanCertificate | None, limits: Limits = DEFAULT_LIMITS
) -> dict:
    return {
        "kind": "fan-minor",
        "matroid": matroid_to_json(m, limits),
        "n": n,
        "strategy": strategy,
        "certificate": None if cert is None else fan_certificate_to_json(cert),
    }


def replay_bundle(data: dict, limits: Limits = DEFAULT_LIMITS) -> tuple[bool, str | None]:
    """Re-validate a certificate bundle from its embedded inputs alone."""
    if data.get("kind") != "fan-minor":
        return False, f"unknown bundle kind {data.get('kind')!r}"
    m = matroid_from_json(data["matroid"], limits)
    if data["certificate"] is None:
        return True, "no certificate claimed"
    cert = fan_certificate_from_json(m, data["certificate"])
    if cert.n != int(data["n"]):
        return False, "certificate index disagrees with the query"
    return validate_fan_certificate(m, cert)


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
