"""Command-line entry point: ``lightsout <command> ...``.

Exit codes: 0 success (or solvable), 1 negative verdict (unsolvable graph,
unsolvable configuration, failed validation), 2 bad input.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from collections import Counter
from fractions import Fraction
from typing import Optional, Sequence

from . import enumeration, montecarlo
from .formats import FormatError, parse_graph, to_graph6
from .graph import CapacityError, Graph
from .solver import is_universally_solvable, odd_dominating_set, press, solve_configuration
from . import gf2

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2
ALPHA = 0.001


class InputError(Exception):
    pass


def _graph(text: str) -> Graph:
    try:
        return parse_graph(text)
    except (FormatError, CapacityError, ValueError) as exc:
        raise InputError(f"cannot parse graph: {exc}") from exc


def _fmt_set(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"# seed={args.seed}", file=sys.stderr)
    return args.seed


def cmd_check(args) -> int:
    g = _graph(args.graph)
    r = gf2.rank(gf2.neighborhood_matrix(g))
    ok = is_universally_solvable(g)
    print("solvable" if ok else "unsolvable")
    print(f"rank {r}/{g.n}")
    ods = odd_dominating_set(g)
    if ods is not None:
        parity = "even" if len(ods) % 2 == 0 else "odd"
        print(f"odd dominating set {_fmt_set(ods)} size {len(ods)} ({parity})")
    return EXIT_OK if ok else EXIT_NO


def _parse_on(text: str, n: int) -> list[int]:
    text = text.strip()
    if text == "all":
        return list(range(n))
    if text in ("", "none"):
        return []
    try:
        on = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad vertex list {text!r}") from exc
    if any(not 0 <= v < n for v in on):
        raise InputError(f"vertex list {text!r} leaves range(0, {n})")
    return on


def cmd_solve(args) -> int:
    g = _graph(args.graph)
    on = _parse_on(args.on, g.n)
    presses = solve_configuration(g, on)
    if presses is None:
        print("unsolvable configuration")
        return EXIT_NO
    left = press(g, on, sorted(presses))
    print(f"press {_fmt_set(presses)}")
    print("replay: all off" if not left else f"replay: still on {_fmt_set(left)}")
    return EXIT_OK if not left else EXIT_NO


def cmd_sample(args) -> int:
    from ._kernel import GENERATOR_NAME, KernelTables, run_batch

    seed = _seed(args)
    tables = KernelTables(args.n, args.e)
    rows, attempts, _ = run_batch(tables, seed, montecarlo.stream_id(args.n, args.e), 0, args.count, True)
    print(
        f"# n={args.n} e={args.e} seed={seed} generator={GENERATOR_NAME} "
        f"attempts_mean={attempts.mean():.3f} attempts_max={int(attempts.max())}"
    )
    for r in rows:
        print(to_graph6(Graph._trusted(args.n, tuple(int(x) for x in r))))
    return EXIT_OK


def _edges_arg(args) -> Optional[list[int]]:
    return args.e if args.e else None


def cmd_estimate(args) -> int:
    seed = _seed(args)
    config = montecarlo.ExperimentConfig(
        n=args.n, edges=_edges_arg(args), trials=args.trials, seed=seed, workers=args.workers
    )
    estimates = montecarlo.run_experiment(config, progress=args.progress)
    sys.stdout.write(montecarlo.emit_table(estimates, args.format))
    return EXIT_OK


def _exact_rows(n: int, edges: Sequence[int]) -> str:
    lines = ["n,e,classes,solvable,p_exact,p_decimal"]
    for e in edges:
        good, total = enumeration.solvable_count(n, e)
        frac = Fraction(good, total)
        lines.append(f"{n},{e},{total},{good},{frac},{float(frac):.6f}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    if not 2 <= args.n <= 64:
        raise InputError("table needs 2 <= n <= 64")
    N = args.n * (args.n - 1) // 2
    if args.exact:
        if args.n > enumeration.MAX_VERTEX_ENUM:
            raise InputError(f"--exact needs n <= {enumeration.MAX_VERTEX_ENUM}")
        sys.stdout.write(_exact_rows(args.n, range(1, N)))
        return EXIT_OK
    args.e = None
    return cmd_estimate(args)


def cmd_exact(args) -> int:
    N = args.n * (args.n - 1) // 2
    edges = args.e if args.e else range(N + 1)
    try:
        sys.stdout.write(_exact_rows(args.n, edges))
    except (CapacityError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_census(args) -> int:
    try:
        if args.m is not None:
            if not args.n or len(args.n) != 1:
                raise InputError("--m needs exactly one --n")
            n = args.n[0]
            result = enumeration.compute_U(n, args.m)
            for g in result.graphs:
                print(to_graph6(g))
            print("m,n,count")
            print(f"{args.m},{n},{result.count}")
            return EXIT_OK
        if args.d is None:
            raise InputError("give --d or --m")
        sizes = args.n if args.n else [3 * args.d]
        results = [enumeration.compute_E(n, args.d) for n in sizes]
    except (CapacityError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    for g in results[0].graphs:
        print(to_graph6(g))
    print("d,n,count")
    for res in results:
        print(f"{res.d},{res.n},{res.count}")
    return EXIT_OK


def cmd_validate(args) -> int:
    from scipy.stats import chisquare

    from ._kernel import KernelTables, run_batch
    from .canon import canonical_rows
    from .sampler import ORACLE_MAX_VERTICES, _class_list

    if args.n > ORACLE_MAX_VERTICES:
        raise InputError(f"validation needs n <= {ORACLE_MAX_VERTICES}")
    seed = _seed(args)
    classes = _class_list(args.n, args.e)
    index = {canonical_rows(g.n, g.rows): k for k, g in enumerate(classes)}
    tables = KernelTables(args.n, args.e)
    rows, _, _ = run_batch(tables, seed, montecarlo.stream_id(args.n, args.e), 0, args.samples, True)
    counts = Counter(index[canonical_rows(args.n, [int(x) for x in r])] for r in rows)
    observed = [counts.get(k, 0) for k in range(len(classes))]
    dof = len(classes) - 1
    if dof == 0:
        stat, pvalue = 0.0, 1.0
    else:
        stat, pvalue = chisquare(observed)
    ok = pvalue > ALPHA
    print(f"classes={len(classes)} samples={args.samples} chi2={stat:.4f} dof={dof} p={pvalue:.4g}")
    print(("PASS" if ok else "FAIL") + f" at significance {ALPHA}")
    return EXIT_OK if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lightsout", description="Lights Out on graphs: solvability, censuses and sampling.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="universal solvability of one graph")
    p.add_argument("--graph", required=True, help="graph6 string or 'n=4; 0-1,1-2'")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="press set clearing a configuration")
    p.add_argument("--graph", required=True)
    p.add_argument("--on", default="all", help="comma-separated lit vertices, 'all' or 'none'")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sample", help="uniform random graphs as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_sample)

    def add_mc(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--trials", type=int, default=100_000)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int, default=montecarlo.default_workers())
        p.add_argument("--format", choices=("csv", "text", "series"), default="csv")
        p.add_argument("--progress", action="store_true", help="report progress on stderr")

    p = sub.add_parser("estimate", help="Monte Carlo estimate for chosen edge counts")
    add_mc(p)
    p.add_argument("--e", type=int, action="append", help="edge count (repeatable)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("table", help="estimates for every e in 1..N-1")
    add_mc(p)
    p.add_argument("--exact", action="store_true", help="exact fractions from enumeration (n <= 9)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("exact", help="exact solvable fraction from enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, action="append")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("census", help="excess-degree or edge-offset census")
    p.add_argument("--d", type=int, help="excess degree")
    p.add_argument("--m", type=int, help="edge offset below N - floor(n/2)")
    p.add_argument("--n", type=int, action="append", help="vertex count (repeatable for --d)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("validate-sampler", help="chi-square test of sampler uniformity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapacityError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
