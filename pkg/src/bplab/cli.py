"""Command-line front end: generate, compile, measure, verify, certify.

Every subcommand is deterministic for a fixed argument vector and seed;
reports and CSV files are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bp import best_order_size, nfbdd_compile, uniformize
from .covers import constants, coverlb_bound, extract_cut_cover, min_dis_cover
from .fileio import (
    fmt_num,
    parse_bp,
    parse_cnf,
    parse_graph,
    write_bp,
    write_certificate,
    write_instance_bundle,
)
from .graphs import cnf_from_graph, path_graph
from .instances import (
    canonical_tree_decomposition,
    complete_binary_tree,
    family_edge_count,
    family_params,
    hard_family_instance,
)
from .suites import SUITES
from .widths import dmw_exact, mw_exact

MATERIALIZE_LIMIT = 100_000
BEST_ORDER_LIMIT = 12


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SystemExit(f"cannot read {path}: {exc.strerror}")


def _write_out(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise SystemExit(f"cannot write {path}: {exc.strerror}")
    print(f"wrote {path}")


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        params = family_params(args.k, args.r, allow_small_r=args.allow_small_r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    edges = family_edge_count(params)
    print(f"k={params.k} y={params.y} r={params.r} p={params.p} "
          f"n={params.n} edges={edges}")
    if params.n > MATERIALIZE_LIMIT:
        print(f"instance exceeds {MATERIALIZE_LIMIT} vertices; "
              "sizes reported without materialization")
        return 0
    g, _ = hard_family_instance(args.k, args.r, allow_small_r=args.allow_small_r)
    td = canonical_tree_decomposition(
        complete_binary_tree(params.r), path_graph(params.path_len))
    for path in write_instance_bundle(args.out, params, g, cnf_from_graph(g), td):
        print(f"wrote {path}")
    return 0


def cmd_compile(args: argparse.Namespace) -> int:
    cnf = parse_cnf(_read(args.cnf))
    order = None
    if args.best_order:
        if cnf.num_vars > min(BEST_ORDER_LIMIT, args.cap_subset):
            print(f"error: best-order search capped at "
                  f"{min(BEST_ORDER_LIMIT, args.cap_subset)} variables, "
                  f"CNF has {cnf.num_vars}", file=sys.stderr)
            return 2
        _, order = best_order_size(cnf, cap=min(BEST_ORDER_LIMIT, args.cap_subset))
    elif args.order:
        order = tuple(int(t) for t in args.order.split(","))
    y = nfbdd_compile(cnf, order)
    used = order if order is not None else tuple(range(cnf.num_vars))
    print("order=" + ",".join(str(v) for v in used))
    print(f"nodes={y.size_nodes} edges={y.size_edges}")
    if args.out:
        _write_out(args.out, write_bp(y))
    return 0


def _cmd_width(args: argparse.Namespace, which: str) -> int:
    g = parse_graph(_read(args.graph))
    try:
        if which == "mw":
            res = mw_exact(g, cap=args.cap_subset)
        else:
            res = dmw_exact(g, cap=args.cap_subset)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{which}={res.value}")
    print("order=" + ",".join(str(v) for v in res.witness_order))
    return 0


def cmd_mw(args: argparse.Namespace) -> int:
    return _cmd_width(args, "mw")


def cmd_dmw(args: argparse.Namespace) -> int:
    return _cmd_width(args, "dmw")


def cmd_uniformize(args: argparse.Namespace) -> int:
    z = parse_bp(_read(args.bp))
    try:
        u = uniformize(z)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"nodes={z.size_nodes}->{u.size_nodes} "
          f"edges={z.size_edges}->{u.size_edges}")
    if args.out:
        _write_out(args.out, write_bp(u))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; available: "
              + ", ".join(sorted(SUITES)), file=sys.stderr)
        return 2
    results = SUITES[args.suite](args.seed)
    failed = 0
    for res in results:
        if res.ok:
            print(f"PASS {res.name}")
        else:
            failed += 1
            print(f"FAIL {res.name}: {res.detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_cover(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    try:
        q, cover = min_dis_cover(g, args.t, cap=args.cap_vars)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    bound = coverlb_bound(g.max_degree(), args.t)
    print(f"q={q}")
    for b in cover:
        print("dis " + " ".join(str(v) for v in sorted(b)))
    print(f"bound={fmt_num(float(bound))}")
    return 0 if q >= bound else 1


def cmd_certify(args: argparse.Namespace) -> int:
    z = parse_bp(_read(args.bp))
    g = parse_graph(_read(args.graph))
    try:
        cert = extract_cut_cover(z, g)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"q={cert.q} dmw={cert.dmw} bound={fmt_num(cert.bound)}")
    if args.out:
        _write_out(args.out, write_certificate(cert))
    return 0 if cert.q >= cert.bound - 1e-9 else 1


def cmd_experiment(args: argparse.Namespace) -> int:
    import warnings

    rows: list[list[str]] = []
    a5 = constants(5).a_x
    prev_edges = prev_nodes = 0
    failures: list[str] = []
    for r in range(args.r_min, args.r_max + 1):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            g, params = hard_family_instance(args.k, r, allow_small_r=True)
        cnf = cnf_from_graph(g)
        if args.order == "best" and g.n <= min(BEST_ORDER_LIMIT, args.cap_subset):
            _, order = best_order_size(cnf, cap=min(BEST_ORDER_LIMIT, args.cap_subset))
            y = nfbdd_compile(cnf, order)
        else:
            y = nfbdd_compile(cnf)
        edges, nodes = y.size_edges, y.size_nodes
        best_edges = "-"
        if g.n <= min(BEST_ORDER_LIMIT, args.cap_subset):
            best_edges = str(best_order_size(cnf, cap=BEST_ORDER_LIMIT)[0])
        dmw_s = q_s = lb_s = "-"
        if g.n <= args.cap_subset:
            try:
                d = dmw_exact(g, cap=args.cap_subset).value
                dmw_s = str(d)
                lb = 2.0 ** (d / a5)
                lb_s = fmt_num(lb)
                cert = extract_cut_cover(y, g, path_cap=args.path_cap)
                q_s = str(cert.q)
                if lb > nodes:
                    failures.append(
                        f"r={r}: lower bound {lb_s} exceeds node count {nodes}")
            except (ValueError, RuntimeError) as exc:
                failures.append(f"r={r}: {exc}")
        if args.order == "natural" and (edges < prev_edges or nodes < prev_nodes):
            failures.append(
                f"r={r}: compiled size shrank ({prev_edges},{prev_nodes}) -> "
                f"({edges},{nodes})")
        prev_edges, prev_nodes = edges, nodes
        rows.append([str(args.k), str(r), str(params.n), str(edges), str(nodes),
                     best_edges, dmw_s, q_s, lb_s])
    rows.sort(key=lambda row: (int(row[0]), int(row[1])))
    csv_text = "k,r,n,edges,nodes,best_edges,dmw,q,lb\n"
    csv_text += "".join(",".join(row) + "\n" for row in rows)
    if args.out:
        _write_out(args.out, csv_text)
    else:
        sys.stdout.write(csv_text)
    for msg in failures:
        print(f"ASSERT FAIL {msg}", file=sys.stderr)
    return 1 if failures else 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--cap-vars", type=int, default=20,
                     help="largest variable count for exhaustive enumeration")
    sub.add_argument("--cap-subset", type=int, default=22,
                     help="largest vertex count for subset dynamic programs")
    sub.add_argument("--exact", action="store_true",
                     help="use rational arithmetic where supported")
    sub.add_argument("--seed", type=int, default=0, help="random seed")
    sub.add_argument("--out", help="output file or directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bplab",
        description="Branching-program workbench: widths, compilation, "
                    "uniformization, covers, certificates.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="generate a hard-family instance bundle")
    p.add_argument("--k", type=int, required=True, help="clique-width parameter k")
    p.add_argument("--r", type=int, required=True, help="tree height r")
    p.add_argument("--allow-small-r", action="store_true",
                   help="permit heights below the 5*ceil(log2 k) threshold")
    _add_common(p)
    p.set_defaults(func=cmd_gen)
    p.set_defaults(out=".")

    p = subs.add_parser("compile", help="compile a monotone 2-CNF into a diagram")
    p.add_argument("--cnf", required=True, help="DIMACS CNF input file")
    p.add_argument("--order", help="comma-separated variable order")
    p.add_argument("--best-order", action="store_true",
                   help="search all orders for the smallest diagram")
    _add_common(p)
    p.set_defaults(func=cmd_compile)

    p = subs.add_parser("mw", help="exact matching width of a graph")
    p.add_argument("--graph", required=True, help="DIMACS graph input file")
    _add_common(p)
    p.set_defaults(func=cmd_mw)

    p = subs.add_parser("dmw", help="exact distant matching width of a graph")
    p.add_argument("--graph", required=True, help="DIMACS graph input file")
    _add_common(p)
    p.set_defaults(func=cmd_dmw)

    p = subs.add_parser("uniformize", help="make a program uniform")
    p.add_argument("--bp", required=True, help="program input file")
    _add_common(p)
    p.set_defaults(func=cmd_uniformize)

    p = subs.add_parser("verify", help="run a named invariant suite")
    p.add_argument("--suite", required=True,
                   help="one of: " + ", ".join(sorted(SUITES)))
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("cover", help="minimum DIS cover of a graph's clauses")
    p.add_argument("--graph", required=True, help="DIMACS graph input file")
    p.add_argument("--t", type=int, required=True, help="DIS size")
    _add_common(p)
    p.set_defaults(func=cmd_cover)

    p = subs.add_parser("certify", help="extract a cut-cover certificate")
    p.add_argument("--bp", required=True, help="uniform program input file")
    p.add_argument("--graph", required=True, help="DIMACS graph input file")
    p.add_argument("--path-cap", type=int, default=20000,
                   help="largest number of root-leaf paths to walk")
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = subs.add_parser("experiment", help="family sweep with CSV output")
    p.add_argument("--k", type=int, default=6, help="family parameter k")
    p.add_argument("--r-min", type=int, default=1, help="smallest height")
    p.add_argument("--r-max", type=int, default=5, help="largest height")
    p.add_argument("--order", choices=("natural", "best"), default="natural",
                   help="variable order strategy for the size columns")
    p.add_argument("--path-cap", type=int, default=20000,
                   help="largest number of root-leaf paths to walk")
    _add_common(p)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
