"""Command-line front end.

One binary, one seeded RNG, conservative default capacities, and
deterministic output: the same configuration always produces byte
identical JSON.  Exit codes: 0 ok, 1 negative answer or property
violation, 2 parse error, 3 domain error, 4 capacity exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .config import DEFAULT_LIMITS, Limits
from .decomposition import branch_depth, branch_width, decomposition_to_dot
from .errors import (
    AxiomError,
    CapacityError,
    DomainError,
    PreconditionError,
    ValidationError,
)
from .lollipop import find_fan_minor, find_lollipop
from .matroids import Matroid
from .serialize import (
    dumps,
    fan_certificate_to_json,
    lollipop_to_json,
    make_fan_bundle,
    matroid_from_json,
    matroid_to_json,
)
from .twisted import twist_of
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_CAPACITY = 4


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None
    limits: Limits
    seed: int
    output_format: str


def _limits_from(args: argparse.Namespace) -> Limits:
    limit = args.limit
    if limit is None:
        env = os.environ.get("FANFORGE_LIMIT")
        if env is not None:
            limit = int(env)
    if limit is None:
        return DEFAULT_LIMITS
    if limit <= 0:
        raise DomainError("capacity limit must be positive")
    return Limits(
        subset_scan=limit,
        enumeration=limit,
        branch_search=limit,
        node_degree=max(limit, DEFAULT_LIMITS.node_degree),
        isomorphism=limit,
    )


def _parse_set(m: Matroid, spec: str):
    labels = [part for part in spec.split(",") if part != ""]
    return m.subset(labels)


def _load(path: str, limits: Limits) -> Matroid:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return matroid_from_json(data, limits)
    except (OSError, json.JSONDecodeError, DomainError, KeyError, TypeError, ValueError) as exc:
        raise _ParseFailure(str(exc)) from exc


class _ParseFailure(Exception):
    pass


def _witness_json(dec) -> dict | None:
    if dec is None:
        return None
    nodes = [str(n) for n in dec.tree.nodes]
    return {
        "nodes": nodes,
        "edges": sorted([str(u), str(v)] for u, v in dec.tree.edges()),
        "leaves": {lab: str(node) for lab, node in sorted(dec.leaf_map.items())},
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanforge",
        description="matroid decomposition toolkit: widths, twists, fan minors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("matroid", help="path to a matroid JSON file")
        p.add_argument("--limit", type=int, default=None, help="capacity override")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized campaigns")
        p.add_argument(
            "--format", choices=("text", "json", "dot"), default="text", dest="fmt"
        )

    for name in ("rank", "lambda"):
        p = sub.add_parser(name, help=f"evaluate {name} on a subset")
        common(p)
        p.add_argument("--set", required=True, dest="subset", help="comma-separated labels")

    p = sub.add_parser("components", help="connectivity components")
    common(p)

    for name in ("branch-width", "branch-depth"):
        p = sub.add_parser(name, help=f"exact {name} with witness")
        common(p)
        p.add_argument("--assert", type=int, default=None, dest="expect")

    p = sub.add_parser("fan-minor", help="search for a fan minor certificate")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=("direct", "constructive"), default="direct")

    p = sub.add_parser("lollipop", help="run the lollipop search on a matroid twist")
    common(p)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--w", type=int, default=3)

    p = sub.add_parser("verify", help="run a seeded property suite")
    common(p, needs_input=False)
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--cases", type=int, default=None)

    p = sub.add_parser("convert", help="normalize a matroid file to an explicit base list")
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        limits = _limits_from(args)
        return _dispatch(args, limits)
    except _ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, PreconditionError, AxiomError, ValidationError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def _dispatch(args: argparse.Namespace, limits: Limits) -> int:
    cmd = args.command

    if cmd == "verify":
        report = run_suite(args.suite, seed=args.seed, cases=args.cases, limits=limits)
        if args.fmt == "text":
            state = "pass" if report.passed else "FAIL"
            print(f"suite {report.suite}: {state} ({report.checks} checks)")
            for v in sorted(report.violations):
                print(f"  violation: {v}")
        else:
            sys.stdout.write(dumps(report.to_json()))
        return EXIT_OK if report.passed else EXIT_NEGATIVE

    m = _load(args.matroid, limits)

    if cmd in ("rank", "lambda"):
        subset = _parse_set(m, args.subset)
        value = m.rank(subset) if cmd == "rank" else m.lam(subset)
        if args.fmt == "json":
            sys.stdout.write(
                dumps({"command": cmd, "set": sorted(subset.labels()), "value": value})
            )
        else:
            print(value)
        return EXIT_OK

    if cmd == "components":
        blocks = [sorted(c.labels()) for c in m.components()]
        if args.fmt == "json":
            sys.stdout.write(dumps({"command": cmd, "components": blocks}))
        else:
            for block in blocks:
                print(",".join(block))
        return EXIT_OK

    if cmd in ("branch-width", "branch-depth"):
        cert = (
            branch_width(m, limits) if cmd == "branch-width" else branch_depth(m, limits)
        )
        if args.fmt == "dot":
            if cert.witness is None:
                print("// no witness for trivial ground sets")
            else:
                print(decomposition_to_dot(m, cert.witness))
        elif args.fmt == "json":
            sys.stdout.write(
                dumps(
                    {
                        "command": cmd,
                        "value": cert.value,
                        "witness": _witness_json(cert.witness),
                        "refuted": cert.trace.refuted_value,
                    }
                )
            )
        else:
            print(cert.value)
        if args.expect is not None and cert.value != args.expect:
            return EXIT_NEGATIVE
        return EXIT_OK

    if cmd == "fan-minor":
        cert = find_fan_minor(m, args.n, args.strategy, limits)
        bundle = make_fan_bundle(m, args.n, args.strategy, cert, limits)
        if args.fmt == "json":
            sys.stdout.write(dumps(bundle))
        elif cert is None:
            print("none")
        else:
            print("-".join(cert.path))
        return EXIT_OK if cert is not None else EXIT_NEGATIVE

    if cmd == "lollipop":
        w = twist_of(m, m.greedy_base(), limits)
        lol = find_lollipop(w, args.a, args.b, args.w, limits)
        if args.fmt == "json":
            sys.stdout.write(dumps({"command": cmd, "witness": lollipop_to_json(lol)}))
        else:
            print(
                f"stick={','.join(lol.stick.labels())} z={lol.z} "
                f"candy={','.join(lol.candy.labels())}"
            )
        return EXIT_OK

    if cmd == "convert":
        data = matroid_to_json(m, limits)
        data["backend"] = {
            "type": "bases",
            "bases": sorted(sorted(b.labels()) for b in m.bases(limits)),
        }
        sys.stdout.write(dumps(data))
        return EXIT_OK

    raise AssertionError(f"unhandled command {cmd}")  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
