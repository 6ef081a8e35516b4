"""Command-line interface: solve, approx, reduce, gen, bench.

Exit codes: 0 success, 1 parse/usage/precondition error, 2 refusal
(node-count caps and enumeration guards).

Output records are deterministic by default: measured runtimes are only
written when --timings is passed, so repeated runs with fixed seeds are
byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from . import exactdp, gen, greedy, oracle, reductions, scoreio
from .errors import ParseError, PreconditionError, RefusalError
from .model import Instance, make_instance, normalize, nodes_of

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUSED = 2


def _load_instance(args) -> Instance:
    with open(args.scores, encoding="utf-8") as fh:
        instance = scoreio.parse_scores(fh.read())
    if not getattr(args, "no_normalize", False):
        normalized = normalize(instance)
        if normalized != instance:
            print("note: scores were shifted to normalize f_v(empty) = 0",
                  file=sys.stderr)
        instance = normalized
    k = getattr(args, "max_indegree", None)
    q = getattr(args, "max_component_arcs", None)
    if k is not None or q is not None:
        pairs = []
        for fam in instance.families:
            pairs.append(
                [(m, s) for m, s in fam.entries
                 if k is None or len(nodes_of(m)) <= k]
            )
        instance = make_instance(pairs, names=instance.names, k=k, q=q,
                                 additive=instance.additive)
    return instance


def _emit(result, args) -> None:
    if not getattr(args, "timings", False):
        result.runtime_ms = 0.0
    text = scoreio.write_result(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    instance = _load_instance(args)
    if args.algo == "brute":
        constraints = oracle.ConstraintSet(
            k=args.max_indegree, q=args.max_component_arcs,
            require_connected=args.connected,
        )
        result = oracle.brute_force(instance, constraints)
    else:
        if args.connected:
            raise PreconditionError("--connected is only supported with --algo brute")
        if args.max_component_arcs is not None:
            raise PreconditionError(
                "--max-component-arcs is only supported with --algo brute"
            )
        if args.algo == "dp":
            result = exactdp.solve_full_dp(instance, force=args.force)
        else:
            result = exactdp.solve_pruned_dp(instance, slack=args.slack,
                                             force=args.force)
    _emit(result, args)
    return EXIT_OK


def cmd_approx(args) -> int:
    instance = _load_instance(args)
    if args.algo == "greedy":
        result = greedy.greedy_parent_sets(instance)
    elif args.algo == "additive":
        if args.max_indegree is None:
            raise PreconditionError("--algo additive requires --max-indegree")
        result = greedy.greedy_arcs_additive(instance, args.max_indegree)
    else:
        if args.max_component_arcs is None:
            raise PreconditionError("--algo density requires --max-component-arcs")
        result = greedy.greedy_density_comp(instance, args.max_component_arcs)
    _emit(result, args)
    return EXIT_OK


def cmd_reduce(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        text = fh.read()
    if args.kind == "setpart":
        source = scoreio.parse_set_family(text)
        instance, cert = reductions.reduce_set_partition(source, args.epsilon_inv)
    elif args.kind == "indset":
        instance, cert = reductions.reduce_independent_set(scoreio.parse_graph(text))
    else:
        instance, q, cert = reductions.reduce_independent_set_comp(
            scoreio.parse_graph(text)
        )
        cert.params["q"] = q
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(scoreio.write_scores(instance))
    with open(args.out + ".cert.json", "w", encoding="utf-8") as fh:
        json.dump(cert.to_record(), fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = gen.GenConfig(
        n=args.n,
        max_parent_size=args.max_parent_size,
        sets_per_node=args.sets_per_node,
        score_low=args.score_low,
        score_high=args.score_high,
        seed=args.seed,
        additive=args.additive,
    )
    try:
        instance = gen.random_instance(cfg)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    text = scoreio.write_scores(instance)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


BENCH_SUITES = {
    "small": [gen.GenConfig(n=n, max_parent_size=2, sets_per_node=3, seed=seed)
              for n in (4, 5, 6) for seed in (1, 2, 3)],
    "medium": [gen.GenConfig(n=n, max_parent_size=3, sets_per_node=3, seed=seed)
               for n in (6, 7) for seed in range(1, 6)],
}


def cmd_bench(args) -> int:
    configs = BENCH_SUITES[args.suite]
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(
        ["instance", "n", "algo", "score", "opt", "ratio", "states_visited",
         "runtime_ms"]
    )
    for cfg in configs:
        instance = gen.random_instance(cfg)
        label = f"rnd-n{cfg.n}-s{cfg.seed}"
        opt = oracle.brute_force(instance).score
        runs = [
            exactdp.solve_full_dp(instance),
            exactdp.solve_pruned_dp(instance),
            greedy.greedy_parent_sets(instance),
        ]
        for result in runs:
            ratio = opt / result.score if result.score > 0 else 1.0
            writer.writerow([
                label, cfg.n, result.algorithm, result.score, opt, ratio,
                result.states_visited,
                result.runtime_ms if args.timings else 0.0,
            ])
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(buffer.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polytree", description="Score-based polytree learning toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="exact solvers")
    solve.add_argument("--scores", required=True)
    solve.add_argument("--algo", choices=["dp", "dp-pruned", "brute"], required=True)
    solve.add_argument("--max-indegree", type=int)
    solve.add_argument("--max-component-arcs", type=int)
    solve.add_argument("--slack", type=int, default=2)
    solve.add_argument("--connected", action="store_true")
    solve.add_argument("--force", action="store_true")
    solve.add_argument("--no-normalize", action="store_true")
    solve.add_argument("--timings", action="store_true")
    solve.add_argument("--out")
    solve.set_defaults(func=cmd_solve)

    approx = sub.add_parser("approx", help="greedy approximation algorithms")
    approx.add_argument("--scores", required=True)
    approx.add_argument("--algo", choices=["greedy", "additive", "density"],
                        required=True)
    approx.add_argument("--max-indegree", type=int)
    approx.add_argument("--max-component-arcs", type=int)
    approx.add_argument("--no-normalize", action="store_true")
    approx.add_argument("--timings", action="store_true")
    approx.add_argument("--out")
    approx.set_defaults(func=cmd_approx)

    reduce_p = sub.add_parser("reduce", help="hardness-reduction instance generators")
    reduce_p.add_argument("kind", choices=["setpart", "indset", "indset-comp"])
    reduce_p.add_argument("--in", dest="infile", required=True)
    reduce_p.add_argument("--epsilon-inv", type=int, default=1)
    reduce_p.add_argument("--out", required=True)
    reduce_p.set_defaults(func=cmd_reduce)

    gen_p = sub.add_parser("gen", help="seeded random instance generator")
    gen_p.add_argument("--n", type=int, required=True)
    gen_p.add_argument("--max-parent-size", type=int, default=2)
    gen_p.add_argument("--sets-per-node", type=int, default=2)
    gen_p.add_argument("--score-low", type=int, default=-5)
    gen_p.add_argument("--score-high", type=int, default=10)
    gen_p.add_argument("--seed", type=int, default=0)
    gen_p.add_argument("--additive", action="store_true")
    gen_p.add_argument("--out")
    gen_p.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="paired exact/approx benchmark to CSV")
    bench.add_argument("--suite", choices=sorted(BENCH_SUITES), default="small")
    bench.add_argument("--timings", action="store_true")
    bench.add_argument("--out", required=True)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ParseError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
