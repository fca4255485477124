"""Command line: genus, decompose, survey, selftest.

Exit codes: 0 success, 1 bad input, 2 failed certificate or theorem check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import CertificateError, GraphError, NonGenericError, ResourceLimitError
from .graph import parse_graph, rigid_components
from .verify import conjecture_probe, run_pipeline, survey

DEFAULT_SEED = 1

HEX = "0 1\n0 2\n0 3\n1 4\n1 5\n2 4\n3 5\n4 5\n"
SELFTEST_CASES = [
    ("six-vertex example", HEX, 5),
    ("two triangles at a vertex", "0 1\n1 2\n2 0\n2 3\n3 4\n4 2\n", 0),
    ("four-cycle", "0 1\n1 2\n2 3\n3 0\n", 1),
]


def _read_graph(args):
    if args.inline is not None:
        text = args.inline
    elif args.graph == "-":
        text = sys.stdin.read()
    else:
        with open(args.graph) as fh:
            text = fh.read()
    return parse_graph(text)


def _header(args, g=None):
    h = {"version": __version__, "seed": args.seed}
    if g is not None:
        h["graph"] = json.loads(g.canonical_json())
    return h


def cmd_genus(args):
    g = _read_graph(args)
    res = run_pipeline(g, args.seed, method=args.method)
    rep, cert = res.report, res.curve.certificates
    if args.export_curve:
        with open(args.export_curve, "w") as fh:
            fh.write(res.curve.to_json(projection=args.projection, genus=rep.genus) + "\n")
    if args.json:
        out = _header(args, g)
        out.update(report=rep.to_dict(), certificates=cert, w=[str(x) for x in res.w],
                   curve_hash=res.curve.digest())
        print(json.dumps(out, sort_keys=True))
    else:
        flags = [f for f in ("smooth", "transversal") if cert.get(f)]
        print(f"genus {rep.genus}, r={res.r}, " + ", ".join(flags))
        print(f"seed {args.seed}; vertices {rep.vertex_count}, bounded edges "
              f"{rep.bounded_edge_count}, rays {rep.unbounded_edge_count}")
        if args.certificate:
            for k, v in sorted(cert.items()):
                print(f"  {k}: {v}")
            print(f"  euler_genus: {rep.euler_genus}")
            print(f"  w: {' '.join(str(x) for x in res.w)}")
    needed = ("transversal", "balanced", "balancing_lemma", "smooth", "multiplicities_one",
              "connected")
    return 0 if all(cert.get(k) for k in needed) and rep.euler_genus == rep.genus else 2


def cmd_decompose(args):
    g = _read_graph(args)
    d = rigid_components(g)
    out = _header(args, g)
    out.update(d.to_json())
    print(json.dumps(out, sort_keys=True) if args.json else json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_survey(args):
    rep = survey(args.vertices, args.seed, args.jobs, min_degree=args.min_degree,
                 invariance_seeds=args.invariance_seeds)
    lines = rep.json_lines()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    if args.json:
        print("\n".join(lines))
    else:
        print(f"tropgenus {__version__}, seed {args.seed}, |V| <= {args.vertices}, "
              f"min degree {args.min_degree}")
        print(rep.table())
        for name, ok in rep.assertions().items():
            print(f"  {'PASS' if ok else 'FAIL'} {name}")
        print(f"  genus 3 observed: {'yes' if 3 in rep.genera else 'no'}")
        _, bad = conjecture_probe(rep)
        print(f"  genus-1 graphs that are not four pieces in a cycle: {len(bad)}")
    return 0 if rep.ok else 2


def cmd_selftest(args):
    status = 0
    for name, text, expected in SELFTEST_CASES:
        res = run_pipeline(parse_graph(text), args.seed)
        ok = res.report.genus == expected and res.curve.certificates.get("smooth")
        print(f"{'PASS' if ok else 'FAIL'} {name}: genus {res.report.genus} (expected {expected})")
        status = status if ok else 2
    return status


def build_parser():
    p = argparse.ArgumentParser(prog="tropgenus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tropgenus {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            src = sp.add_mutually_exclusive_group(required=True)
            src.add_argument("--graph", metavar="PATH", help="edge list file ('-' for stdin)")
            src.add_argument("--inline", metavar="EDGES", help='edges like "0 1,1 2,2 0"')
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"random seed (default {DEFAULT_SEED})")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    g = sub.add_parser("genus", help="genus of the configuration curve")
    common(g)
    g.add_argument("--export-curve", metavar="PATH", help="write the tropical curve as JSON")
    g.add_argument("--projection", type=int, choices=(2, 3), default=None,
                   help="add projected coordinates to the exported curve")
    g.add_argument("--certificate", action="store_true", help="print all certificates")
    g.add_argument("--method", choices=("auto", "trace", "cells", "cones"), default="auto")
    g.set_defaults(func=cmd_genus)

    d = sub.add_parser("decompose", help="rigid components as JSON")
    common(d)
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("survey", help="all 1-dof graphs up to a vertex count")
    common(s, graph=False)
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--min-degree", type=int, default=1, choices=(1, 2))
    s.add_argument("--invariance-seeds", type=int, default=0,
                   help="extra parameter draws compared per graph")
    s.add_argument("--out", metavar="PATH", help="write JSON lines here")
    s.set_defaults(func=cmd_survey)

    t = sub.add_parser("selftest", help="three reference graphs")
    common(t, graph=False)
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CertificateError, NonGenericError) as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
