"""Command-line interface: ``lpa <command> FILE [options]``.

Exit status is 0 on success, 1 for unreadable or malformed input (and for a
``verify`` run that finds failures), 2 when a command's hypotheses do not
hold for the given graph or vertex set.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import acyclic_dimension, default_choice, format_element
from .corpus import DEFAULT_SEED
from .errors import ParseError, PreconditionError
from .fields import parse_field
from .graph import (
    Graph,
    full_closure,
    hereditary_closure,
    is_acyclic,
    is_hereditary,
    is_saturated,
    quotient,
    restriction,
    sink_source_free_core,
    sinks,
    sources,
)
from .graphio import graph_to_dict, load_graph
from .simples import matrix_decomposition, simple_census
from .structure import enumerate_cycles, one_cycle_condition, recollement_triple, stratify
from .verify import run_suite

SCHEMA_ID = "lpa-report/1"


def _sorted(s):
    return sorted(s)


def graph_summary(g: Graph) -> dict:
    cycles = enumerate_cycles(g)
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "sources": _sorted(sources(g)),
        "sinks": _sorted(sinks(g)),
        "cycles": [str(c) for c in cycles],
        "counts": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "sources": len(sources(g)),
            "sinks": len(sinks(g)),
            "cycles": len(cycles),
        },
    }


def conditions(g: Graph) -> dict:
    return {"acyclic": is_acyclic(g), "one_cycle_condition": one_cycle_condition(g)}


def stratification_dict(g: Graph) -> dict:
    rep = stratify(g)
    return {
        "sink_layer": {"copies_of_K": rep.sink_layer, "sinks": list(rep.sinks)},
        "core": graph_to_dict(rep.core),
        "cycle_layers": [
            {
                "cycle": str(layer.cycle),
                "vertices": list(layer.cycle.vertices),
                "closure": _sorted(layer.closure),
                "morita_class": layer.morita_class,
                "graph_before": graph_to_dict(layer.graph_before),
            }
            for layer in rep.cycle_layers
        ],
        "chain": [graph_to_dict(b) for b in rep.chain],
        "choice_rule": rep.choice_rule,
    }


def triple_dict(g: Graph, h, field) -> dict:
    t = recollement_triple(g, h, field)
    return {
        "h": _sorted(t.h),
        "h_closure": _sorted(t.h_closure),
        "left": graph_to_dict(t.left),
        "middle": graph_to_dict(t.middle),
        "right": graph_to_dict(t.right),
        "corner_idempotent": format_element(t.corner_idempotent),
        "certificate": t.certificate,
    }


def _parse_set(g: Graph, text: str | None) -> frozenset:
    if text is None:
        raise PreconditionError("this command needs --set v1,v2,...")
    members = [t.strip() for t in text.split(",") if t.strip()]
    return g.check_subset(members)


def build_report(args) -> dict:
    doc = load_graph(args.file)
    g = doc.graph
    field = parse_field(args.field)
    report = {
        "schema": SCHEMA_ID,
        "tool_version": __version__,
        "command": args.command,
        "input": doc.path,
        "parameters": {"field": field.name, "max_degree": args.max_degree},
        "graph": graph_summary(g),
        "conditions": conditions(g),
    }
    cmd = args.command
    if cmd == "analyze":
        if report["conditions"]["one_cycle_condition"]:
            report["stratification"] = stratification_dict(g)
            report["census"] = simple_census(g, field, args.max_degree).as_dict()
        if report["conditions"]["acyclic"]:
            report["decomposition"] = matrix_decomposition(g).as_dict()
        report["special_edges"] = dict(sorted(default_choice(g).items()))
    elif cmd == "closure":
        h = _parse_set(g, args.set)
        report["closure"] = {
            "set": _sorted(h),
            "hereditary": is_hereditary(g, h),
            "saturated": is_saturated(g, h),
            "hereditary_closure": _sorted(hereditary_closure(g, h)),
            "hereditary_saturated_closure": _sorted(full_closure(g, h)),
        }
    elif cmd == "restrict":
        h = _parse_set(g, args.set)
        report["restriction"] = graph_to_dict(restriction(g, h))
    elif cmd == "quotient":
        x = _parse_set(g, args.set)
        report["quotient"] = graph_to_dict(quotient(g, x))
    elif cmd == "triple":
        h = _parse_set(g, args.set)
        report["triple"] = triple_dict(g, h, field)
    elif cmd == "strata":
        report["stratification"] = stratification_dict(g)
    elif cmd == "simples":
        report["census"] = simple_census(g, field, args.max_degree).as_dict()
    elif cmd == "dim":
        dec = matrix_decomposition(g, cross_check=True)
        report["decomposition"] = dec.as_dict()
        report["core"] = graph_to_dict(sink_source_free_core(g))
        report["dimension"] = acyclic_dimension(g)
    elif cmd == "verify":
        report["parameters"]["seed"] = args.seed
        report["verification"] = run_suite(g, seed=args.seed, samples=args.samples, jobs=args.jobs)
    return report


def render_text(obj, indent: int = 0) -> str:
    """Indented ``key: value`` rendering carrying exactly the JSON data."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(val)}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}-")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(val)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return "\n".join(lines)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--field", default=argparse.SUPPRESS, help="Q or Fp (default F2)")
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, help="census degree bound (default 3)")

    parser = argparse.ArgumentParser(prog="lpa", description="Graph surgery and Leavitt path algebra checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--field", default="F2")
    parser.add_argument("--max-degree", type=int, default=3)
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {
        "analyze": "summary, conditions, stratification and census",
        "closure": "hereditary and hereditary saturated closures of --set",
        "restrict": "restriction graph on a hereditary --set",
        "quotient": "quotient graph by a hereditary saturated --set",
        "triple": "recollement triple for a hereditary --set",
        "strata": "stratification by minimal cycles",
        "simples": "simple-module label census",
        "dim": "matrix block decomposition of an acyclic graph",
        "verify": "run the invariant suite",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        if name in ("closure", "restrict", "quotient", "triple"):
            p.add_argument("--set", required=True, help="comma-separated vertex ids")
        if name == "verify":
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--samples", type=int, default=200)
            p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        report = build_report(args)
    except ParseError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: hypothesis violated: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # bad --field and similar argument values
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    if args.command == "verify" and not report["verification"]["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
