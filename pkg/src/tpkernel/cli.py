"""Command-line interface: ``tpkernel <command> ...``.

Exit codes: 0 success (trivially perfect, yes, agree), 1 negative answer,
2 invalid input, 3 refused because an instance exceeds the size cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from typing import Sequence, TextIO

from .decomposition import strong_modules
from .generate import GenSpec, plant_instance
from .graph import EdgeListFile, InvalidInputError, parse_edge_list
from .kernel import MODES, Instance, audit_bounds, reduce_exhaustively
from .recognition import build_ucd, find_obstruction
from .solver import solve

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


def _read(path: str) -> EdgeListFile:
    if path == "-":
        return parse_edge_list(sys.stdin)
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_edge_list(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None


def _mode_of(data: EdgeListFile, override: str | None) -> str:
    if override is not None:
        return override
    for c in data.comments:
        parts = c.split()
        if len(parts) == 2 and parts[0] == "mode" and parts[1] in MODES:
            return parts[1]
    return "editing"


def _instance(data: EdgeListFile, k: int | None, mode: str | None) -> Instance:
    k = data.k if k is None else k
    if k is None:
        raise InvalidInputError("no parameter k: give --k or a header with k >= 0")
    return Instance(data.graph, k, _mode_of(data, mode))


def _write(path: str | None, text: str, fallback: TextIO) -> None:
    if path is None or path == "-":
        fallback.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_recognize(args: argparse.Namespace, out: TextIO) -> int:
    g = _read(args.input).graph
    obs = find_obstruction(g)
    if obs is None:
        out.write("TP\n")
        return EXIT_OK
    out.write(f"NOT-TP {obs.kind} {' '.join(map(str, obs.vertices))}\n")
    return EXIT_NO


def cmd_decompose(args: argparse.Namespace, out: TextIO) -> int:
    g = _read(args.input).graph
    if args.ucd:
        obs = find_obstruction(g)
        if obs is not None:
            out.write(f"NOT-TP {obs.kind} {' '.join(map(str, obs.vertices))}\n")
            return EXIT_NO
        out.write(build_ucd(g).format())
        return EXIT_OK
    md = strong_modules(g)
    for i, node in enumerate(md.nodes):
        flag = "tp" if node.trivially_perfect else "-"
        out.write(f"{i} {node.parent} {node.kind} {flag} : {' '.join(map(str, node.members))}\n")
    return EXIT_OK


def cmd_kernelize(args: argparse.Namespace, out: TextIO) -> int:
    inst = _instance(_read(args.input), args.k, args.mode)
    reduced, trace = reduce_exhaustively(inst)
    out.write(f"{inst.n} {reduced.n} {inst.k} {trace.rules_fired()}\n")
    _write(args.out, reduced.to_edge_list(), out)
    if args.trace is not None:
        _write(args.trace, trace.format(), out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    inst = _instance(_read(args.input), args.k, args.mode)
    res = solve(inst)
    out.write(res.format(inst.graph))
    return EXIT_OK if res.decision else EXIT_NO


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    spec = GenSpec(
        seed=args.seed,
        n=args.n,
        root_prob=args.root_prob,
        parent_window=args.window,
        bag_max=args.bag_max,
        r=args.edits,
        mode=args.mode,
    )
    _write(args.out, plant_instance(spec).to_edge_list(), out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    original = _read(args.original)
    kernel = _read(args.kernel)
    biggest = max(original.graph.n, kernel.graph.n)
    if biggest > args.cap:
        err.write(f"refused: instance has {biggest} vertices, cap is {args.cap} (raise with --cap)\n")
        return EXIT_REFUSED
    a = solve(_instance(original, args.k, args.mode))
    b = solve(_instance(kernel, args.k, args.mode))
    agree = a.decision == b.decision
    out.write(f"{'AGREE' if agree else 'DISAGREE'} {'yes' if a.decision else 'no'} {'yes' if b.decision else 'no'}\n")
    return EXIT_OK if agree else EXIT_NO


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        return range(int(lo), int(hi)) if sep else range(int(lo), int(lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected SEED or LO:HI, got {text!r}") from None


BENCH_FIELDS = ["seed", "n", "k", "mode", "m", "n_kernel", "m_kernel", "rules", "violations"]


def bench_rows(
    seeds: Sequence[int],
    sizes: Sequence[int],
    ks: Sequence[int],
    mode: str,
    root_prob: float,
    window: int,
    bag_max: int,
    timing: bool,
) -> list[dict[str, object]]:
    rows = []
    for seed in seeds:
        for n in sizes:
            for k in ks:
                spec = GenSpec(seed=seed, n=n, root_prob=root_prob, parent_window=window, bag_max=bag_max, r=k, mode=mode)
                inst = plant_instance(spec).instance
                start = time.perf_counter()
                reduced, trace = reduce_exhaustively(inst)
                elapsed = time.perf_counter() - start
                report = audit_bounds(reduced)
                row: dict[str, object] = {
                    "seed": seed,
                    "n": n,
                    "k": k,
                    "mode": mode,
                    "m": inst.graph.edge_count,
                    "n_kernel": reduced.n,
                    "m_kernel": reduced.graph.edge_count,
                    "rules": trace.rules_fired(),
                    "violations": len(report.violations),
                }
                if timing:
                    row["seconds"] = f"{elapsed:.4f}"
                rows.append(row)
    rows.sort(key=lambda r: (r["seed"], r["n"], r["k"]))
    return rows


def cmd_bench(args: argparse.Namespace, out: TextIO) -> int:
    rows = bench_rows(args.seeds, args.sizes, args.ks, args.mode, args.root_prob, args.window, args.bag_max, args.timing)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS + (["seconds"] if args.timing else []), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(args.out, buf.getvalue(), out)
    return EXIT_OK if all(r["violations"] == 0 for r in rows) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tpkernel", description="Trivially perfect editing: recognition, kernelization, exact solving.")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--k", type=int, help="edit budget (overrides the file header)")
        sp.add_argument("--mode", choices=MODES, help="allowed edits (default: from file comment, else editing)")

    def gen_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--root-prob", type=float, default=0.05, help="chance a forest node starts a new tree")
        sp.add_argument("--window", type=int, default=8, help="parents are drawn among this many latest nodes")
        sp.add_argument("--bag-max", type=int, default=3, help="largest bag size")

    sp = sub.add_parser("recognize", help="test whether a graph is trivially perfect")
    sp.add_argument("input", help="edge-list file, or - for stdin")

    sp = sub.add_parser("decompose", help="print the modular decomposition (or the UCD with --ucd)")
    sp.add_argument("input")
    sp.add_argument("--ucd", action="store_true", help="print the universal clique decomposition instead")

    sp = sub.add_parser("kernelize", help="reduce an instance; prints 'n n_kernel k rules_fired'")
    sp.add_argument("input")
    instance_flags(sp)
    sp.add_argument("--out", help="kernel edge-list path (default: stdout after the summary)")
    sp.add_argument("--trace", help="reduction trace path")

    sp = sub.add_parser("solve", help="decide the instance exactly and print a witness")
    sp.add_argument("input")
    instance_flags(sp)

    sp = sub.add_parser("gen", help="generate a planted instance")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--edits", type=int, default=0, help="number of planted pair toggles (becomes k)")
    sp.add_argument("--mode", choices=MODES, default="editing")
    gen_flags(sp)
    sp.add_argument("--out", help="output path (default: stdout)")

    sp = sub.add_parser("verify", help="check that an instance and its kernel have the same answer")
    sp.add_argument("original")
    sp.add_argument("kernel")
    instance_flags(sp)
    sp.add_argument("--cap", type=int, default=12, help="refuse instances with more vertices (default 12)")

    sp = sub.add_parser("bench", help="kernelize a sweep of planted instances and tabulate sizes as CSV")
    sp.add_argument("--seeds", type=_seed_range, default=range(0, 5), help="SEED or LO:HI (default 0:5)")
    sp.add_argument("--sizes", type=_int_list, default=[200], help="comma-separated vertex counts")
    sp.add_argument("--ks", type=_int_list, default=[2, 4], help="comma-separated planted edit counts")
    sp.add_argument("--mode", choices=MODES, default="editing")
    gen_flags(sp)
    sp.add_argument("--timing", action="store_true", help="add a wall-clock column (breaks byte-identical reruns)")
    sp.add_argument("--out", help="CSV path (default: stdout)")
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return cmd_verify(args, out, err)
        handler = {
            "recognize": cmd_recognize,
            "decompose": cmd_decompose,
            "kernelize": cmd_kernelize,
            "solve": cmd_solve,
            "gen": cmd_gen,
            "bench": cmd_bench,
        }[args.command]
        return handler(args, out)
    except InvalidInputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
