"""Command line driver: generate graph families, run the full pipeline,
check artifacts, and convert between the text formats.

Reports are CSV with one experiment per row; all numeric columns are
integers so reruns diff cleanly.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import families
from .bounds import certificate_from_text, certified_lower_bound, verify_certificate
from .bp import bp_from_text, bp_to_text, build_well_structured_bp, infer_annotations, validate_well_structured
from .cnf import cnf_from_dimacs, cnf_to_dimacs
from .compiler import pipeline
from .graphs import Graph, connected_components, graph_from_text, graph_to_text, is_connected
from .nnf import nnf_from_text, nnf_to_text, truth_table as nnf_truth_table
from .resolution import check_refutation, check_regularity, dpll_refute, trace_from_text, trace_to_text
from .tseitin import TseitinFormula, is_satisfiable, to_cnf, truth_table as tseitin_truth_table, tseitin_from_text, tseitin_to_text, unit_charge
from .width import treewidth_bounds

CSV_HEADER = "name,n,m,treewidth,tw_provenance,bp_size,refutation_length,dnnf_size,model_count,bound_exponent,equivalence"


def _parse_charge(spec: str, g: Graph, want_satisfiable: bool, default_seed: int = 0):
    parts = spec.split()
    if parts[0] == "zero":
        charge = tuple([0] * g.n)
    elif parts[0] == "odd-at":
        charge = unit_charge(g.n, int(parts[1]))
    elif parts[0] in ("random-sat", "random-unsat"):
        rng = random.Random(int(parts[1]) if len(parts) > 1 else default_seed)
        comps = connected_components(g)
        bits = [rng.randint(0, 1) for _ in range(g.n)]
        for comp in comps:
            anchor = max(comp)
            parity = sum(bits[v] for v in comp) % 2
            if parity == 1:
                bits[anchor] ^= 1
        if parts[0] == "random-unsat":
            bits[max(comps[0])] ^= 1
        charge = tuple(bits)
    else:
        raise ValueError(f"unknown charge spec: {spec}")
    sat = is_satisfiable(TseitinFormula(g, charge))
    if sat != want_satisfiable:
        kind = "satisfiable" if want_satisfiable else "unsatisfiable"
        raise ValueError(f"charge spec {spec!r} is not {kind} on this graph")
    return charge


def cmd_generate(args) -> int:
    g = families.generate(args.family, args.params)
    text = graph_to_text(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def pipeline_row(name: str, g: Graph, charge_spec: str, target_spec: str, desk_cap: int, seed: int = 0) -> str:
    c_unsat = _parse_charge(charge_spec, g, want_satisfiable=False, default_seed=seed)
    c_star = _parse_charge(target_spec, g, want_satisfiable=True, default_seed=seed + 1)
    report, d, bp = pipeline(g, c_unsat, c_star, desk_cap=desk_cap)
    trace = dpll_refute(to_cnf(TseitinFormula(g, c_unsat)))
    tw_lb, _, prov = treewidth_bounds(g)
    cert = certified_lower_bound(g)
    count = report.model_count_circuit if report.model_count_circuit is not None else report.model_count_expected
    return ",".join(str(x) for x in (
        name, g.n, g.m, tw_lb, prov, report.bp_size, len(trace), report.dnnf_size,
        count, cert.k, report.equivalence,
    ))


def cmd_pipeline(args) -> int:
    with open(args.graph) as fh:
        g = graph_from_text(fh.read())
    row = pipeline_row(args.graph, g, args.charge, args.target, args.desk_scale_cap, seed=args.seed)
    out = CSV_HEADER + "\n" + row + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_check(args) -> int:
    try:
        if args.kind == "refutation":
            with open(args.files[0]) as fh:
                cnf = cnf_from_dimacs(fh.read())
            with open(args.files[1]) as fh:
                trace = trace_from_text(fh.read())
            result = check_refutation(cnf, trace)
            if not result:
                print(f"invalid refutation: {result.error}", file=sys.stderr)
                return 1
            regular = check_regularity(trace)
            print(f"valid refutation; regular: {regular}")
            return 0
        if args.kind == "bp":
            with open(args.files[0]) as fh:
                t = tseitin_from_text(fh.read())
            with open(args.files[1]) as fh:
                b = bp_from_text(fh.read())
            annotations = infer_annotations(b, t.graph, t.charge)
            result = validate_well_structured(b, t.graph, t.charge, annotations)
            if not result:
                print(f"invalid program: {result.error} (node {result.node})", file=sys.stderr)
                return 1
            print("valid well-structured program")
            return 0
        if args.kind == "dnnf-equiv":
            with open(args.files[0]) as fh:
                t = tseitin_from_text(fh.read())
            with open(args.files[1]) as fh:
                d = nnf_from_text(fh.read())
            if t.graph.m > args.desk_scale_cap:
                print("formula exceeds the desk-scale cap", file=sys.stderr)
                return 1
            if d.num_vars != t.graph.m:
                print("variable counts differ", file=sys.stderr)
                return 1
            if not (nnf_truth_table(d) == tseitin_truth_table(t)).all():
                print("circuit and formula are not equivalent", file=sys.stderr)
                return 1
            print("equivalent")
            return 0
        if args.kind == "certificate":
            with open(args.files[0]) as fh:
                g = graph_from_text(fh.read())
            with open(args.files[1]) as fh:
                cert = certificate_from_text(fh.read())
            ok, msg = verify_certificate(cert, g)
            if not ok:
                print(f"invalid certificate: {msg}", file=sys.stderr)
                return 1
            print("valid certificate")
            return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"unknown artifact kind {args.kind}", file=sys.stderr)
    return 2


def cmd_convert(args) -> int:
    with open(args.input) as fh:
        text = fh.read()
    fmt = args.format
    try:
        if fmt == "graph":
            out = graph_to_text(graph_from_text(text))
        elif fmt == "tseitin":
            out = tseitin_to_text(tseitin_from_text(text))
        elif fmt == "cnf":
            if text.lstrip().startswith("p tseitin"):
                out = cnf_to_dimacs(to_cnf(tseitin_from_text(text)))
            else:
                out = cnf_to_dimacs(cnf_from_dimacs(text))
        elif fmt == "nnf":
            out = nnf_to_text(nnf_from_text(text))
        elif fmt == "bp":
            out = bp_to_text(bp_from_text(text))
        elif fmt == "trace":
            out = trace_to_text(trace_from_text(text))
        else:
            print(f"unknown format {fmt}", file=sys.stderr)
            return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_compile(args) -> int:
    with open(args.input) as fh:
        t = tseitin_from_text(fh.read())
    if is_satisfiable(t):
        print("source formula must be unsatisfiable", file=sys.stderr)
        return 1
    if not is_connected(t.graph):
        print("graph must be connected", file=sys.stderr)
        return 1
    bp, _ = build_well_structured_bp(t.graph, t.charge)
    out = bp_to_text(bp)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tseitinkit")
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a graph from a named family")
    gen.add_argument("family", choices=["cycle", "path", "complete", "grid", "wheel", "cube", "random-regular"])
    gen.add_argument("params", nargs="*")
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_generate)

    pipe = sub.add_parser("pipeline", help="run the full build/compile/verify pipeline")
    pipe.add_argument("--graph", required=True)
    pipe.add_argument("--charge", default="odd-at 0")
    pipe.add_argument("--target", default="zero")
    pipe.add_argument("--seed", type=int, default=0)
    pipe.add_argument("--out")
    pipe.add_argument("--desk-scale-cap", type=int, default=16)
    pipe.set_defaults(func=cmd_pipeline)

    chk = sub.add_parser("check", help="validate an artifact")
    chk.add_argument("kind", choices=["refutation", "bp", "dnnf-equiv", "certificate"])
    chk.add_argument("files", nargs="+")
    chk.add_argument("--desk-scale-cap", type=int, default=16)
    chk.set_defaults(func=cmd_check)

    conv = sub.add_parser("convert", help="parse and re-emit a file in a text format")
    conv.add_argument("input")
    conv.add_argument("--format", required=True, choices=["graph", "tseitin", "cnf", "nnf", "bp", "trace"])
    conv.add_argument("--out")
    conv.set_defaults(func=cmd_convert)

    comp = sub.add_parser("build-bp", help="build a well-structured program for an unsatisfiable formula")
    comp.add_argument("input")
    comp.add_argument("--out")
    comp.set_defaults(func=cmd_compile)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
