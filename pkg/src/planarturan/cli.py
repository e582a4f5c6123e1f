"""Command-line front end.

Subcommands build hosts and gadgets, run the full counterexample pipeline,
re-verify imported graphs, tabulate the bound formulas over a range, and
convert between serialization formats.  Output is JSON by default (stable
key order, rationals as num/den strings, so identical invocations are
byte-identical); --pretty switches to a human-readable summary.

Exit codes: 0 when the requested check certified (or plain output was
produced), 2 when a verification ran and rejected the claim, 1 for usage or
input errors.  TURAN_BUDGET overrides the node-expansion budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, cycles, gadgets, hexhost, substitution
from .embedding import euler_audit, export_graph, import_graph
from .errors import AcyclicGraph, PlanarTuranError


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the CLI reserves 2 for
    well-formed rejections, so remap usage errors to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit(text: str | bytes, out: str | None) -> None:
    if isinstance(text, str):
        text = text.encode()
    if out:
        Path(out).write_bytes(text)
    else:
        sys.stdout.buffer.write(text)
        if not text.endswith(b"\n"):
            sys.stdout.buffer.write(b"\n")


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def _frac(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _budget(args) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("TURAN_BUDGET")
    return int(env) if env else None


def _build_gadget(family: str, t: int, extra: bool, index: int) -> gadgets.Gadget:
    if family == "stacked":
        return gadgets.stacked_gadget(t, extra)
    if family == "moon-moser":
        return gadgets.moon_moser(index)
    if family == "octahedron":
        return gadgets.octahedron()
    raise ValueError(f"unknown gadget family {family!r}")


def _cmd_host(args) -> int:
    host = hexhost.build_hex_host(args.k)
    graph = host.graph
    if args.g is not None:
        graph = hexhost.stretch_to_girth(host, args.g).graph
    _emit(export_graph(graph, args.format), args.out)
    return 0


def _cmd_gadget(args) -> int:
    gadget = _build_gadget(args.family, args.t, args.extra, args.i)
    if args.format != "json":
        _emit(export_graph(gadget.graph, args.format), args.out)
        return 0
    doc = {
        "family": args.family,
        "n": gadget.n_b,
        "e": gadget.e_b,
        "anchors": list(gadget.anchors),
        "cycle_cap": gadget.cycle_cap,
        "graph": json.loads(export_graph(gadget.graph, "json")),
    }
    _emit(_json_dump(doc), args.out)
    return 0


def _cmd_counterexample(args) -> int:
    ell, k = args.ell, args.k
    if ell < 11:
        raise PlanarTuranError(f"counterexamples require --ell >= 11, got {ell}")
    host = hexhost.stretch_to_girth(hexhost.build_hex_host(k), ell + 1)
    t, extra = bounds.gadget_size_for(ell)
    gadget = gadgets.stacked_gadget(t, extra)
    result = substitution.substitute(host, gadget)
    if args.trim_to is not None:
        result = substitution.trim_to_order(result, args.trim_to, ell)
    outcome = bounds.certify(result, ell, method=args.method,
                             budget=_budget(args), jobs=args.jobs)
    if args.graph_out:
        Path(args.graph_out).write_bytes(export_graph(result.graph, "json"))
    if args.pretty:
        status = "CERTIFIED" if outcome.certified else f"REJECTED ({outcome.failed_check})"
        print(f"l={ell} k={k}: n={outcome.n} e={outcome.e} "
              f"bound={outcome.bound} margin={outcome.margin} [{status}]")
    else:
        _emit(_json_dump(outcome.to_json_dict()), args.out)
    return 0 if outcome.certified else 2


def _cmd_verify(args) -> int:
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        raise PlanarTuranError(f"cannot read {args.input}: {exc}") from None
    if args.format != "json":
        raise PlanarTuranError(
            "verify requires embedded-JSON input: the Euler audit of an explicit "
            "rotation system is the planarity certificate, and adjacency-only "
            "formats carry no embedding"
        )
    graph = import_graph(data, "json")
    report: dict = {"n": graph.n, "e": graph.edge_count}
    planar_ok = euler_audit(graph)
    report["planar"] = planar_ok
    ok = planar_ok
    budget = _budget(args)
    try:
        report["girth"] = cycles.girth(graph, budget=budget).answer
    except AcyclicGraph:
        report["girth"] = None
    if args.ell is not None:
        hit = cycles.has_cycle_of_length(graph, args.ell, budget=budget, jobs=args.jobs)
        bound = bounds.conjectured_bound(args.ell, graph.n)
        margin = Fraction(graph.edge_count) - bound
        report.update({
            "ell": args.ell,
            "has_cycle": hit.answer,
            "witness": list(hit.witness) if hit.witness else None,
            "bound": _frac(bound),
            "margin": _frac(margin),
            "beats_bound": margin > 0,
        })
        ok = ok and not hit.answer and margin > 0
    if args.pretty:
        print(" ".join(f"{k}={v}" for k, v in report.items()))
    else:
        _emit(_json_dump(report), args.out)
    return 0 if ok else 2


def _cmd_table(args) -> int:
    rows = []
    for ell in range(args.ell_min, args.ell_max + 1):
        t, extra = bounds.gadget_size_for(ell)
        n_b = 3 * t - 3 if extra else 3 * t - 4
        e_b = 3 * n_b - 6
        n = bounds.counterexample_order(ell, args.k)
        e = bounds.host_order(ell, args.k) * e_b
        bound = bounds.conjectured_bound(ell, n)
        margin = Fraction(e) - bound
        rows.append({
            "ell": ell, "k": args.k, "t": t, "extra": extra,
            "gadget_n": n_b, "gadget_e": e_b,
            "n": n, "e": e,
            "bound": _frac(bound), "margin": _frac(margin),
            "beats_bound": margin > 0,
        })
    if args.pretty:
        for r in rows:
            print(f"l={r['ell']:3d} n={r['n']:8d} e={r['e']:8d} "
                  f"margin={r['margin']['num']}/{r['margin']['den']}")
    else:
        _emit(_json_dump(rows), args.out)
    return 0


def _cmd_export(args) -> int:
    data = Path(args.input).read_bytes()
    graph = import_graph(data, args.input_format)
    _emit(export_graph(graph, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="planarturan",
                     description="build and certify dense planar graphs with no l-cycle")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, jobs=False):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--pretty", action="store_true", help="human-readable output")
        p.add_argument("--budget", type=int, help="node-expansion budget override")
        if jobs:
            p.add_argument("--jobs", type=int, default=1,
                           help="worker count for the exhaustive cycle search")

    p = sub.add_parser("host", help="build a hexagonal or stretched dense host")
    p.add_argument("--k", type=int, required=True, help="host width parameter (even, >= 2)")
    p.add_argument("--g", type=int, help="stretch to this girth (>= 6)")
    p.add_argument("--format", choices=["json", "graph6", "dot"], default="json")
    common(p)
    p.set_defaults(func=_cmd_host)

    p = sub.add_parser("gadget", help="build a triangulation gadget")
    p.add_argument("--family", choices=["stacked", "moon-moser", "octahedron"],
                   required=True)
    p.add_argument("--t", type=int, default=5, help="stacked gadget base size (>= 5)")
    p.add_argument("--extra", action="store_true", help="add the extra stacked vertex")
    p.add_argument("--i", type=int, default=1, help="moon-moser iteration index")
    p.add_argument("--format", choices=["json", "graph6", "dot"], default="json")
    common(p)
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("counterexample",
                       help="build and certify the full counterexample for C_l")
    p.add_argument("--ell", type=int, required=True, help="excluded cycle length (>= 11)")
    p.add_argument("--k", type=int, default=2, help="host width parameter")
    p.add_argument("--method", choices=["direct", "compositional"], default="direct")
    p.add_argument("--trim-to", type=int, help="trim to this exact order first")
    p.add_argument("--graph-out", help="also write the graph as embedded-JSON here")
    common(p, jobs=True)
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("verify", help="re-check an embedded-JSON graph")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["json", "graph6", "dot"], default="json")
    p.add_argument("--ell", type=int, help="check freedom from C_l and the bound")
    common(p, jobs=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table", help="bound/margin rows over a range of l")
    p.add_argument("--ell-min", type=int, required=True)
    p.add_argument("--ell-max", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("export", help="convert between graph formats")
    p.add_argument("--input", required=True)
    p.add_argument("--input-format", choices=["json", "graph6", "dot"], default="json")
    p.add_argument("--format", choices=["json", "graph6", "dot"], required=True)
    common(p)
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PlanarTuranError as exc:
        print(f"planarturan: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"planarturan: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
